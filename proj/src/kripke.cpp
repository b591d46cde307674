#include "epsilon/kripke.hpp"

#include <algorithm>

#include "epsilon/print.hpp"

namespace epsilon {

void KripkeStructure::validate() const {
  if (worlds.empty()) throw SemanticsError("structure needs at least one world");
  if (elems.empty()) throw SemanticsError("structure needs at least one element");
  if (elems.size() > 20) throw SemanticsError("element pool too large");
  if ((int)reach.size() != size()) throw SemanticsError("accessibility matrix out of sync");
  for (auto& row : reach)
    if ((int)row.size() != size()) throw SemanticsError("accessibility matrix out of sync");
  for (int a = 0; a < size(); ++a)
    if (!reach[a][a]) throw SemanticsError("accessibility must be reflexive");
  if (require_transitive)
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b)
        for (int c = 0; c < size(); ++c)
          if (reach[a][b] && reach[b][c] && !reach[a][c])
            throw SemanticsError("accessibility must be transitive");
  if ((int)dom.size() != size()) throw SemanticsError("domain assignment out of sync");
  uint32_t pool = (1u << elems.size()) - 1;
  for (int w = 0; w < size(); ++w) {
    if (dom[w] == 0) throw SemanticsError("empty domain at world " + worlds[w]);
    if (dom[w] & ~pool) throw SemanticsError("domain outside the element pool");
  }
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      if (reach[a][b] && (dom[a] & ~dom[b]))
        throw SemanticsError("domains must grow along accessibility");
  for (auto& [name, per] : preds) {
    if ((int)per.size() != size())
      throw SemanticsError("interpretation of " + name + " out of sync");
    for (int w = 0; w < size(); ++w)
      for (auto& tup : per[w])
        for (int e : tup)
          if (!in_dom(w, e))
            throw SemanticsError("tuple of " + name + " outside the domain at " + worlds[w]);
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b)
        if (reach[a][b])
          for (auto& tup : per[a])
            if (!per[b].count(tup))
              throw SemanticsError("interpretation of " + name + " not monotone");
  }
  for (auto& [c, e] : consts)
    if (e < 0 || e >= (int)elems.size())
      throw SemanticsError("constant " + c + " outside the element pool");
}

std::string WorldChoice::key(const TermPtr& eps_term) { return print(eps_term); }

namespace {

struct Forcer {
  const KripkeStructure& ks;
  const WorldChoice& wc;
  const Valuation& env;
  std::vector<int> stack;

  int denote(const TermPtr& t, int w) {
    if (auto* b = std::get_if<Bound>(&t->node)) {
      if (b->index < 0 || b->index >= (int)stack.size())
        throw SemanticsError("eps-terms must be closed under Kripke evaluation");
      return stack[stack.size() - 1 - b->index];
    }
    if (auto* fr = std::get_if<Free>(&t->node)) {
      auto it = env.find(fr->name);
      if (it == env.end()) throw SemanticsError("unbound variable: " + fr->name);
      return it->second;
    }
    if (auto* a = std::get_if<App>(&t->node)) {
      if (auto v = numeral_value(t)) {
        if (*v >= ks.elems.size())
          throw SemanticsError("numeral " + a->fn + " outside the element pool");
        return (int)*v;
      }
      if (!a->args.empty())
        throw SemanticsError("function symbols are not interpreted over Kripke structures");
      auto it = ks.consts.find(a->fn);
      if (it == ks.consts.end()) throw SemanticsError("unknown constant: " + a->fn);
      return it->second;
    }
    std::string k = WorldChoice::key(t);
    auto it = wc.table.find(k);
    if (it == wc.table.end()) throw SemanticsError("no choice entry for " + k);
    auto jt = it->second.find(w);
    if (jt == it->second.end())
      throw SemanticsError("choice for " + k + " undefined at world " + ks.worlds[w]);
    return jt->second;
  }

  bool atom_local(const FormulaPtr& f, int w) {
    if (auto* p = std::get_if<Pred>(&f->node)) {
      std::vector<int> tup;
      tup.reserve(p->args.size());
      for (auto& a : p->args) {
        int e = denote(a, w);
        if (!ks.in_dom(w, e)) return false;
        tup.push_back(e);
      }
      auto it = ks.preds.find(p->name);
      if (it == ks.preds.end()) throw SemanticsError("uninterpreted predicate: " + p->name);
      return it->second[w].count(tup) != 0;
    }
    auto& e = std::get<Eq>(f->node);
    int l = denote(e.lhs, w), r = denote(e.rhs, w);
    if (!ks.in_dom(w, l) || !ks.in_dom(w, r)) return false;
    return l == r;
  }

  static bool atom_has_eps(const FormulaPtr& f) {
    if (auto* p = std::get_if<Pred>(&f->node)) {
      for (auto& a : p->args)
        if (contains_eps(a)) return true;
      return false;
    }
    auto& e = std::get<Eq>(f->node);
    return contains_eps(e.lhs) || contains_eps(e.rhs);
  }

  bool force(const FormulaPtr& f, int w) {
    if (std::get_if<Pred>(&f->node) || std::get_if<Eq>(&f->node)) {
      // an atom whose denotation moves with the world is forced only when it
      // holds stably along every accessible world; plain atoms are local
      if (atom_has_eps(f)) {
        for (int v = 0; v < ks.size(); ++v)
          if (ks.reaches(w, v) && !atom_local(f, v)) return false;
        return true;
      }
      return atom_local(f, w);
    }
    if (std::get_if<Truth>(&f->node)) return true;
    if (std::get_if<Falsity>(&f->node)) return false;
    if (auto* n = std::get_if<Not>(&f->node)) {
      for (int v = 0; v < ks.size(); ++v)
        if (ks.reaches(w, v) && force(n->sub, v)) return false;
      return true;
    }
    if (auto* a = std::get_if<And>(&f->node)) return force(a->lhs, w) && force(a->rhs, w);
    if (auto* o = std::get_if<Or>(&f->node)) return force(o->lhs, w) || force(o->rhs, w);
    if (auto* i = std::get_if<Imp>(&f->node)) {
      for (int v = 0; v < ks.size(); ++v)
        if (ks.reaches(w, v) && force(i->lhs, v) && !force(i->rhs, v)) return false;
      return true;
    }
    if (auto* fa = std::get_if<Forall>(&f->node)) {
      for (int v = 0; v < ks.size(); ++v) {
        if (!ks.reaches(w, v)) continue;
        for (int e = 0; e < (int)ks.elems.size(); ++e) {
          if (!ks.in_dom(v, e)) continue;
          stack.push_back(e);
          bool body = force(fa->body, v);
          stack.pop_back();
          if (!body) return false;
        }
      }
      return true;
    }
    auto& ex = std::get<Exists>(f->node);
    for (int e = 0; e < (int)ks.elems.size(); ++e) {
      if (!ks.in_dom(w, e)) continue;
      stack.push_back(e);
      bool body = force(ex.body, w);
      stack.pop_back();
      if (body) return true;
    }
    return false;
  }
};

}  // namespace

bool kripke_force(const KripkeStructure& ks, int world, const FormulaPtr& phi,
                  const WorldChoice& wc, const Valuation& env) {
  if (world < 0 || world >= ks.size()) throw SemanticsError("world index out of range");
  for (auto& [name, e] : env)
    if (!ks.in_dom(world, e))
      throw SemanticsError("environment element for " + name + " outside the domain of " +
                           ks.worlds[world]);
  Forcer fo{ks, wc, env, {}};
  return fo.force(phi, world);
}

namespace {

// elements every constant symbol of the eps-term's body denotes
std::vector<int> body_constants(const KripkeStructure& ks, const FormulaPtr& body) {
  std::vector<int> out;
  for (auto& fn : function_symbols(body)) {
    if (is_numeral(fn)) {
      out.push_back((int)std::stoull(fn));
      continue;
    }
    auto it = ks.consts.find(fn);
    if (it == ks.consts.end())
      throw SemanticsError("unknown constant in working formula: " + fn);
    out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool all_defined(const KripkeStructure& ks, const std::vector<int>& elems, int w) {
  for (int e : elems)
    if (!ks.in_dom(w, e)) return false;
  return true;
}

}  // namespace

ChoiceReport validate_world_choice(const KripkeStructure& ks, const std::vector<TermPtr>& working,
                                   const WorldChoice& wc) {
  ChoiceReport rep;
  for (auto& t : working) {
    auto* ep = std::get_if<Eps>(&t->node);
    if (!ep) throw SemanticsError("working set must consist of eps-terms");
    std::string k = WorldChoice::key(t);
    auto consts = body_constants(ks, ep->body);
    auto it = wc.table.find(k);
    static const std::map<int, int> none;
    const std::map<int, int>& f = it == wc.table.end() ? none : it->second;
    for (int w = 0; w < ks.size(); ++w) {
      bool defined = all_defined(ks, consts, w);
      auto jt = f.find(w);
      ++rep.checks;
      if (defined && jt == f.end()) {
        rep.violations.push_back("(" + k + ", " + ks.worlds[w] + "): missing entry");
        continue;
      }
      if (!defined && jt != f.end()) {
        rep.violations.push_back("(" + k + ", " + ks.worlds[w] +
                                 "): entry where a constant is undefined");
        continue;
      }
      if (!defined) continue;
      if (!ks.in_dom(w, jt->second)) {
        rep.violations.push_back("(" + k + ", " + ks.worlds[w] + "): value outside the domain");
        continue;
      }
      ++rep.checks;
      if (kripke_force(ks, w, mk_exists_raw(ep->body, ep->hint), wc)) {
        static const Valuation empty_env;
        Forcer fo{ks, wc, empty_env, {jt->second}};
        if (!fo.force(ep->body, w))
          rep.violations.push_back("(" + k + ", " + ks.worlds[w] +
                                   "): existential forced but the chosen witness fails");
      }
    }
  }
  return rep;
}

std::vector<Reach> all_preorders(int n) {
  if (n <= 0 || n > 4) throw SemanticsError("preorder enumeration supported for 1 <= n <= 4");
  std::vector<std::pair<int, int>> off;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) off.emplace_back(a, b);
  std::vector<Reach> out;
  for (uint32_t pick = 0; pick < (1u << off.size()); ++pick) {
    Reach r(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) r[a][a] = true;
    for (size_t i = 0; i < off.size(); ++i)
      if ((pick >> i) & 1u) r[off[i].first][off[i].second] = true;
    bool trans = true;
    for (int a = 0; a < n && trans; ++a)
      for (int b = 0; b < n && trans; ++b)
        for (int c = 0; c < n && trans; ++c)
          if (r[a][b] && r[b][c] && !r[a][c]) trans = false;
    if (trans) out.push_back(std::move(r));
  }
  return out;
}

FiniteTopSpace up_set_topology(const KripkeStructure& ks) {
  int n = ks.size();
  if (n > 16) throw SemanticsError("too many worlds for an explicit topology");
  FiniteTopSpace sp;
  sp.n = n;
  sp.names = ks.worlds;
  for (uint32_t s = 0; s < (1u << n); ++s) {
    bool up = true;
    for (int a = 0; a < n && up; ++a)
      if ((s >> a) & 1u)
        for (int b = 0; b < n && up; ++b)
          if (ks.reaches(a, b) && !((s >> b) & 1u)) up = false;
    if (up) sp.opens.push_back(s);
  }
  sp.validate();
  return sp;
}

namespace {

// nonempty monotone assignments world -> mask, odometer order
std::vector<std::vector<uint32_t>> monotone_assignments(const Reach& r, uint32_t pool,
                                                        const std::vector<uint32_t>& lower) {
  int n = (int)r.size();
  std::vector<uint32_t> options;
  for (uint32_t m = 0; m <= pool; ++m) options.push_back(m);
  std::vector<std::vector<uint32_t>> out;
  std::vector<size_t> pick(n, 0);
  for (;;) {
    std::vector<uint32_t> assign(n);
    for (int w = 0; w < n; ++w) assign[w] = options[pick[w]];
    bool ok = true;
    for (int w = 0; w < n && ok; ++w)
      if (assign[w] & ~lower[w]) ok = false;  // stay inside the local bound
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (r[a][b] && (assign[a] & ~assign[b])) ok = false;
    if (ok) out.push_back(assign);
    int w = 0;
    for (; w < n; ++w) {
      if (++pick[w] < options.size()) break;
      pick[w] = 0;
    }
    if (w == n) break;
  }
  return out;
}

std::string reach_name(const Reach& r) {
  std::string s;
  for (size_t a = 0; a < r.size(); ++a)
    for (size_t b = 0; b < r.size(); ++b)
      if (a != b && r[a][b]) s += (s.empty() ? "" : ",") + std::to_string(a) + ">" + std::to_string(b);
  return s.empty() ? "discrete" : s;
}

}  // namespace

BellReport bell_lem_search(int max_worlds, int max_domain) {
  if (max_worlds < 1 || max_worlds > 3) throw SemanticsError("world bound must be 1..3");
  if (max_domain < 1 || max_domain > 2) throw SemanticsError("domain bound must be 1..2");
  BellReport rep;
  const int E = max_domain;
  const uint32_t pool = (1u << E) - 1;

  TermPtr c0 = mk_const("c0"), c1 = mk_const("c1");
  FormulaPtr alphas[2] = {mk_pred("P", {c0}), mk_pred("P", {c1})};
  const std::string x = "x";

  for (int W = 1; W <= max_worlds; ++W) {
    for (auto& r : all_preorders(W)) {
      std::vector<uint32_t> nolimit(W, pool);
      for (auto& dom : monotone_assignments(r, pool, nolimit)) {
        if (std::find(dom.begin(), dom.end(), 0u) != dom.end()) continue;  // domains nonempty
        for (auto& val : monotone_assignments(r, pool, dom)) {
          ++rep.structures;
          KripkeStructure ks;
          for (int w = 0; w < W; ++w) ks.worlds.push_back("M" + std::to_string(w));
          ks.reach = r;
          for (int e = 0; e < E; ++e) ks.elems.push_back(std::to_string(e));
          ks.dom = dom;
          ks.consts["c0"] = 0;
          if (E > 1) ks.consts["c1"] = 1;
          auto& pv = ks.preds["P"];
          pv.assign(W, {});
          for (int w = 0; w < W; ++w)
            for (int e = 0; e < E; ++e)
              if ((val[w] >> e) & 1u) pv[w].insert({e});
          ks.validate();
          if (E < 2 || (dom[0] & 3u) != 3u) continue;  // working set undefined at M0

          for (auto& alpha : alphas) {
            FormulaPtr a_of_x = mk_or(mk_eq(mk_free(x), c0), alpha);
            FormulaPtr b_of_x = mk_or(mk_eq(mk_free(x), c1), alpha);
            TermPtr ea = mk_eps(x, a_of_x);
            TermPtr eb = mk_eps(x, b_of_x);
            FormulaPtr eps_a = mk_iff(mk_exists(x, a_of_x), substitute(a_of_x, x, ea));
            FormulaPtr eps_b = mk_iff(mk_exists(x, b_of_x), substitute(b_of_x, x, eb));
            FormulaPtr ante = mk_forall(x, mk_iff(a_of_x, b_of_x));
            FormulaPtr eps2 = mk_imp(ante, mk_eq(ea, eb));
            FormulaPtr lem_f = mk_or(alpha, mk_not(alpha));
            bool lem = kripke_force(ks, 0, lem_f);

            // definedness regions per the first choice invariant
            std::vector<int> region_a, region_b;
            for (int w = 0; w < W; ++w) {
              if (all_defined(ks, body_constants(ks, std::get<Eps>(ea->node).body), w))
                region_a.push_back(w);
              if (all_defined(ks, body_constants(ks, std::get<Eps>(eb->node).body), w))
                region_b.push_back(w);
            }
            std::vector<int> fa(region_a.size(), 0), fb(region_b.size(), 0);
            auto bump = [&](std::vector<int>& f, const std::vector<int>& region) {
              for (size_t i = 0; i < f.size(); ++i) {
                uint32_t d = ks.dom[region[i]];
                int next = f[i] + 1;
                while (next < E && !((d >> next) & 1u)) ++next;
                if (next < E) {
                  f[i] = next;
                  return true;
                }
                f[i] = __builtin_ctz(d);
              }
              return false;
            };
            // start each entry at the least domain element
            for (size_t i = 0; i < fa.size(); ++i) fa[i] = __builtin_ctz(ks.dom[region_a[i]]);
            for (size_t i = 0; i < fb.size(); ++i) fb[i] = __builtin_ctz(ks.dom[region_b[i]]);
            for (bool more_a = true; more_a; more_a = bump(fa, region_a)) {
              for (bool more_b = true; more_b; more_b = bump(fb, region_b)) {
                ++rep.choice_combos;
                WorldChoice wcx;
                for (size_t i = 0; i < region_a.size(); ++i) wcx.set(ea, region_a[i], fa[i]);
                for (size_t i = 0; i < region_b.size(); ++i) wcx.set(eb, region_b[i], fb[i]);
                if (!kripke_force(ks, 0, eps_a, wcx) || !kripke_force(ks, 0, eps_b, wcx))
                  continue;
                ++rep.eps_admissible;
                if (!lem) {
                  ++rep.lem_refuted_without_eps2;
                  if (rep.notes.size() < 4)
                    rep.notes.push_back("existence alone admits a refuter: W=" +
                                        std::to_string(W) + " frame " + reach_name(r) +
                                        ", alpha " + print(alpha));
                }
                if (kripke_force(ks, 0, eps2, wcx)) {
                  ++rep.eps2_admissible;
                  if (!lem) {
                    ++rep.lem_countermodels;
                    if (rep.notes.size() < 8)
                      rep.notes.push_back("countermodel: W=" + std::to_string(W) + " frame " +
                                          reach_name(r) + ", alpha " + print(alpha));
                  }
                }
                bool f_equal = true;  // on the shared definedness region
                for (size_t i = 0; i < region_a.size() && f_equal; ++i)
                  for (size_t j = 0; j < region_b.size() && f_equal; ++j)
                    if (region_a[i] == region_b[j]) f_equal = fa[i] == fb[j];
                if ((!kripke_force(ks, 0, ante, wcx) || f_equal) && !lem)
                  ++rep.global_variant_countermodels;
              }
            }
          }
        }
      }
    }
  }
  return rep;
}

PersistenceReport persistence_check(int max_worlds) {
  if (max_worlds < 1 || max_worlds > 3) throw SemanticsError("world bound must be 1..3");
  PersistenceReport rep;
  const uint32_t pool = 3;  // two elements

  TermPtr c0 = mk_const("c0"), c1 = mk_const("c1");
  auto P = [&](const TermPtr& t) { return mk_pred("P", {t}); };
  TermPtr vx = mk_free("x");
  std::vector<FormulaPtr> battery = {
      P(vx),
      mk_not(P(vx)),
      mk_or(P(vx), mk_not(P(vx))),
      mk_not(mk_not(P(vx))),
      mk_imp(P(c0), P(vx)),
      mk_eq(vx, c0),
      mk_not(mk_eq(vx, c1)),
      mk_exists("y", P(mk_free("y"))),
      mk_forall("y", P(mk_free("y"))),
      mk_exists("y", mk_imp(P(mk_free("y")), P(vx))),
      mk_imp(mk_exists("y", P(mk_free("y"))), P(vx)),
      mk_forall("y", mk_imp(P(vx), P(mk_free("y")))),
      mk_exists("y", mk_eq(mk_free("y"), vx)),
      mk_forall("y", mk_or(mk_eq(mk_free("y"), vx), P(mk_free("y")))),
  };

  for (int W = 1; W <= max_worlds; ++W) {
    for (auto& r : all_preorders(W)) {
      std::vector<uint32_t> nolimit(W, pool);
      for (auto& dom : monotone_assignments(r, pool, nolimit)) {
        if (std::find(dom.begin(), dom.end(), 0u) != dom.end()) continue;
        for (auto& val : monotone_assignments(r, pool, dom)) {
          ++rep.structures;
          KripkeStructure ks;
          for (int w = 0; w < W; ++w) ks.worlds.push_back("M" + std::to_string(w));
          ks.reach = r;
          ks.elems = {"0", "1"};
          ks.dom = dom;
          ks.consts["c0"] = 0;
          ks.consts["c1"] = 1;
          auto& pv = ks.preds["P"];
          pv.assign(W, {});
          for (int w = 0; w < W; ++w)
            for (int e = 0; e < 2; ++e)
              if ((val[w] >> e) & 1u) pv[w].insert({e});
          ks.validate();

          for (auto& f : battery)
            for (int w = 0; w < W; ++w)
              for (int e = 0; e < 2; ++e) {
                if (!ks.in_dom(w, e)) continue;
                Valuation env{{"x", e}};
                if (!kripke_force(ks, w, f, {}, env)) continue;
                for (int v = 0; v < W; ++v) {
                  if (!ks.reaches(w, v)) continue;
                  ++rep.checks;
                  if (!kripke_force(ks, v, f, {}, env))
                    rep.violations.push_back("persistence fails for " + print(f) + " from " +
                                             ks.worlds[w] + " to " + ks.worlds[v] + " (frame " +
                                             reach_name(r) + ")");
                }
              }
        }
      }
    }
  }
  return rep;
}

}  // namespace epsilon
