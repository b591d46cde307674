#include "epsilon/heyting.hpp"

#include <algorithm>

namespace epsilon {

bool FiniteTopSpace::is_open(uint32_t x) const {
  return std::binary_search(opens.begin(), opens.end(), x);
}

void FiniteTopSpace::validate() const {
  if (n <= 0 || n > 20) throw SemanticsError("point count out of range");
  if ((int)names.size() != n) throw SemanticsError("point names out of sync");
  if (!std::is_sorted(opens.begin(), opens.end()) ||
      std::adjacent_find(opens.begin(), opens.end()) != opens.end())
    throw SemanticsError("opens must be sorted and unique");
  if (!is_open(0) || !is_open(full_mask()))
    throw SemanticsError("empty set and whole space must be open");
  for (uint32_t x : opens) {
    if (x & ~full_mask()) throw SemanticsError("open outside the point set");
    for (uint32_t y : opens) {
      if (!is_open(x | y)) throw SemanticsError("opens not closed under union");
      if (!is_open(x & y)) throw SemanticsError("opens not closed under intersection");
    }
  }
}

uint32_t FiniteTopSpace::interior(uint32_t x) const {
  uint32_t out = 0;
  for (uint32_t o : opens)
    if ((o & ~x) == 0) out |= o;
  return out;
}

uint32_t FiniteTopSpace::closure(uint32_t x) const {
  return full_mask() & ~interior(full_mask() & ~x);
}

std::string FiniteTopSpace::set_name(uint32_t x) const {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if ((x >> i) & 1u) {
      if (!first) out += ", ";
      out += names[i];
      first = false;
    }
  return out + "}";
}

FiniteTopSpace make_space(int n, std::vector<uint32_t> opens) {
  FiniteTopSpace sp;
  sp.n = n;
  for (int i = 0; i < n; ++i) sp.names.push_back(std::string(1, (char)('a' + i)));
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  sp.opens = std::move(opens);
  sp.validate();
  return sp;
}

std::vector<FiniteTopSpace> all_topologies(int n) {
  if (n <= 0 || n > 4) throw SemanticsError("topology enumeration supported for 1 <= n <= 4");
  uint32_t full = (1u << n) - 1;
  std::vector<uint32_t> proper;  // candidate opens besides empty and full
  for (uint32_t x = 1; x < full; ++x) proper.push_back(x);
  std::vector<FiniteTopSpace> out;
  for (uint32_t pick = 0; pick < (1u << proper.size()); ++pick) {
    std::vector<uint32_t> opens = {0, full};
    for (size_t i = 0; i < proper.size(); ++i)
      if ((pick >> i) & 1u) opens.push_back(proper[i]);
    bool closed = true;
    for (size_t i = 0; i < opens.size() && closed; ++i)
      for (size_t j = i + 1; j < opens.size() && closed; ++j) {
        uint32_t u = opens[i] | opens[j], v = opens[i] & opens[j];
        closed = std::find(opens.begin(), opens.end(), u) != opens.end() &&
                 std::find(opens.begin(), opens.end(), v) != opens.end();
      }
    if (closed) out.push_back(make_space(n, opens));
  }
  return out;
}

namespace {

uint32_t eval(const FormulaPtr& f, const FiniteTopSpace& sp, const OpenInterp& interp) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    auto it = interp.find(p->name);
    if (it == interp.end()) throw SemanticsError("no open extension assigned to " + p->name);
    if (!sp.is_open(it->second))
      throw SemanticsError("extension of " + p->name + " is not an open of the space");
    return it->second;
  }
  if (std::get_if<Eq>(&f->node))
    throw SemanticsError("equality has no topological reading here");
  if (std::get_if<Truth>(&f->node)) return sp.full_mask();
  if (std::get_if<Falsity>(&f->node)) return 0;
  if (auto* nn = std::get_if<Not>(&f->node)) return sp.neg(eval(nn->sub, sp, interp));
  if (auto* a = std::get_if<And>(&f->node))
    return eval(a->lhs, sp, interp) & eval(a->rhs, sp, interp);
  if (auto* o = std::get_if<Or>(&f->node))
    return eval(o->lhs, sp, interp) | eval(o->rhs, sp, interp);
  if (auto* i = std::get_if<Imp>(&f->node))
    return sp.imp(eval(i->lhs, sp, interp), eval(i->rhs, sp, interp));
  // generic one-point reading: the bound variable carries no information
  if (auto* fa = std::get_if<Forall>(&f->node))
    return eval(open_binder(fa->body, mk_free(fa->hint.empty() ? "x" : fa->hint)), sp, interp);
  auto& ex = std::get<Exists>(f->node);
  return eval(open_binder(ex.body, mk_free(ex.hint.empty() ? "x" : ex.hint)), sp, interp);
}

}  // namespace

uint32_t heyting_eval(const FormulaPtr& phi, const FiniteTopSpace& sp, const OpenInterp& interp) {
  if (contains_eps(phi)) throw SemanticsError("eps-terms have no topological reading here");
  return eval(phi, sp, interp);
}

std::pair<uint32_t, uint32_t> double_negation_gap(const FiniteTopSpace& sp, uint32_t x) {
  if (!sp.is_open(x)) throw SemanticsError("gap is measured between opens");
  return {x, sp.interior(sp.closure(x))};
}

MarkovReport markov_check(const FiniteTopSpace& sp, const OpenInterp& interp,
                          const FormulaPtr& f) {
  FormulaPtr antecedent = mk_forall("x", mk_imp(mk_not(mk_not(f)), f));
  FormulaPtr conclusion = mk_imp(mk_not(mk_forall("x", f)), mk_exists("x", mk_not(f)));
  MarkovReport rep;
  rep.antecedent = heyting_eval(antecedent, sp, interp);
  rep.conclusion = heyting_eval(conclusion, sp, interp);
  rep.antecedent_full = rep.antecedent == sp.full_mask();
  rep.conclusion_full = rep.conclusion == sp.full_mask();
  rep.violated = rep.antecedent_full && !rep.conclusion_full;
  return rep;
}

}  // namespace epsilon
