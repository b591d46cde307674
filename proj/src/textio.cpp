#include "epsilon/textio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "epsilon/parse.hpp"
#include "epsilon/print.hpp"

namespace epsilon {

namespace {

struct SrcLine {
  int number;  // 1-based position in the file, for error messages
  std::string text;
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<SrcLine> logical_lines(const std::string& text) {
  std::vector<SrcLine> out;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    n++;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    raw = trim(raw);
    if (!raw.empty()) out.push_back({n, raw});
  }
  return out;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

[[noreturn]] void fail(const SrcLine& ln, const std::string& what) {
  throw TextioError("line " + std::to_string(ln.number) + ": " + what);
}

bool parse_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  out = std::stoll(s);
  return true;
}

// Shared signature directives. Returns true when the line was consumed.
bool signature_directive(const SrcLine& ln, const std::vector<std::string>& tok, Signature& sig) {
  if (tok[0] == "arith") {
    if (tok.size() != 1) fail(ln, "arith takes no arguments");
    Signature a = Signature::with_arithmetic();
    for (auto& [n, k] : sig.funcs) a.funcs[n] = k;
    for (auto& [n, k] : sig.preds) a.preds[n] = k;
    sig = a;
    return true;
  }
  if (tok[0] == "fun" || tok[0] == "pred") {
    if (tok.size() != 3) fail(ln, tok[0] + " needs a name and an arity");
    long long ar;
    if (!parse_int(tok[2], ar) || ar < 0) fail(ln, "bad arity: " + tok[2]);
    if (tok[0] == "fun")
      sig.declare_fun(tok[1], (int)ar);
    else
      sig.declare_pred(tok[1], (int)ar);
    return true;
  }
  return false;
}

FormulaPtr parse_formula_at(const SrcLine& ln, const std::string& text, const Signature& sig) {
  try {
    return parse_formula(text, sig);
  } catch (const SyntaxError& e) {
    fail(ln, e.what());
  }
}

TermPtr parse_term_at(const SrcLine& ln, const std::string& text, const Signature& sig) {
  try {
    return parse_term(text, sig);
  } catch (const SyntaxError& e) {
    fail(ln, e.what());
  }
}

// Split on ';' (the grammar has no ';', so this is unambiguous).
std::vector<std::string> segments(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    auto semi = s.find(';', start);
    if (semi == std::string::npos) {
      out.push_back(trim(s.substr(start)));
      return out;
    }
    out.push_back(trim(s.substr(start, semi - start)));
    start = semi + 1;
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TextioError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// --- formula files ---------------------------------------------------------

FormulaFile parse_formula_file(const std::string& text) {
  FormulaFile out;
  for (auto& ln : logical_lines(text)) {
    auto tok = tokens(ln.text);
    if (signature_directive(ln, tok, out.sig)) continue;
    if (tok[0] == "formula") {
      auto rest = trim(ln.text.substr(ln.text.find("formula") + 7));
      if (rest.empty()) fail(ln, "formula directive without a formula");
      out.formulas.push_back(parse_formula_at(ln, rest, out.sig));
      continue;
    }
    fail(ln, "unknown directive: " + tok[0]);
  }
  if (out.formulas.empty()) throw TextioError("formula file contains no formulas");
  return out;
}

FormulaFile read_formula_file(const std::string& path) {
  return parse_formula_file(read_text_file(path));
}

// --- finite model files ------------------------------------------------------

namespace {

int elem_at(const SrcLine& ln, const FiniteModel& m, const std::string& name) {
  int e = m.elem_index(name);
  if (e < 0) fail(ln, "unknown element: " + name);
  return e;
}

// { NAME... } starting at tok[i]; returns the mask and advances i past '}'.
uint32_t parse_elem_set(const SrcLine& ln, const FiniteModel& m,
                        const std::vector<std::string>& tok, size_t& i) {
  if (i >= tok.size() || tok[i] != "{") fail(ln, "expected '{'");
  i++;
  uint32_t mask = 0;
  while (i < tok.size() && tok[i] != "}") mask |= 1u << elem_at(ln, m, tok[i++]);
  if (i >= tok.size()) fail(ln, "unterminated element set");
  i++;  // past '}'
  return mask;
}

}  // namespace

ModelFile parse_model_file(const std::string& text) {
  ModelFile out;
  auto& m = out.model;
  std::vector<std::pair<uint32_t, int>> phi_rows;
  bool have_elems = false;

  for (auto& ln : logical_lines(text)) {
    auto tok = tokens(ln.text);
    if (tok[0] == "elems") {
      if (have_elems) fail(ln, "duplicate elems directive");
      if (tok.size() < 2) fail(ln, "elems needs at least one element");
      if (tok.size() - 1 > 16) fail(ln, "at most 16 elements");
      m.elems.assign(tok.begin() + 1, tok.end());
      have_elems = true;
      continue;
    }
    if (!have_elems) fail(ln, "elems must come first");
    if (tok[0] == "fun") {
      if (tok.size() < 2) fail(ln, "fun needs a name");
      const std::string& name = tok[1];
      auto eq = std::find(tok.begin(), tok.end(), "=");
      if (eq == tok.end()) {
        // bare declaration: known symbol, no rows yet (arity from later rows)
        m.funcs[name];
        continue;
      }
      if (eq + 2 != tok.end()) fail(ln, "fun row needs exactly one value after '='");
      std::vector<int> args;
      for (auto it = tok.begin() + 2; it != eq; ++it) args.push_back(elem_at(ln, m, *it));
      int val = elem_at(ln, m, *(eq + 1));
      auto& table = m.funcs[name];
      if (!table.empty() && table.begin()->first.size() != args.size())
        fail(ln, "inconsistent arity for function " + name);
      if (!table.emplace(args, val).second) fail(ln, "duplicate row for function " + name);
      int arity = (int)args.size();
      auto known = out.sig.fun_arity(name);
      if (known && *known != arity) fail(ln, "inconsistent arity for function " + name);
      if (!known) out.sig.declare_fun(name, arity);
      continue;
    }
    if (tok[0] == "pred") {
      if (tok.size() < 2) fail(ln, "pred needs a name");
      const std::string& name = tok[1];
      std::vector<int> args;
      for (size_t i = 2; i < tok.size(); i++) args.push_back(elem_at(ln, m, tok[i]));
      auto& rows = m.preds[name];
      if (tok.size() == 2) continue;  // bare declaration: empty predicate
      if (!rows.empty() && rows.begin()->size() != args.size())
        fail(ln, "inconsistent arity for predicate " + name);
      rows.insert(args);
      int arity = (int)args.size();
      auto known = out.sig.pred_arity(name);
      if (known && *known != arity) fail(ln, "inconsistent arity for predicate " + name);
      if (!known) out.sig.declare_pred(name, arity);
      continue;
    }
    if (tok[0] == "phi") {
      size_t i = 1;
      uint32_t mask = parse_elem_set(ln, m, tok, i);
      if (i + 2 != tok.size() || tok[i] != "=") fail(ln, "phi row needs '= ELEM'");
      int val = elem_at(ln, m, tok[i + 1]);
      if (mask != 0 && !((mask >> val) & 1u)) fail(ln, "phi value must belong to the subset");
      phi_rows.emplace_back(mask, val);
      continue;
    }
    fail(ln, "unknown directive: " + tok[0]);
  }

  if (!have_elems) throw TextioError("model file has no elems directive");
  // complete bare function declarations as constants are resolved by rows only;
  // a bare `fun f` with no rows stays unknown to the signature on purpose.
  for (auto it = m.funcs.begin(); it != m.funcs.end();) {
    if (it->second.empty())
      it = m.funcs.erase(it);
    else
      ++it;
  }
  if (!phi_rows.empty()) {
    out.has_phi = true;
    out.phi = ChoiceFunction::minimum(m.size());
    for (auto& [mask, val] : phi_rows) out.phi.table[mask] = val;
    out.phi.table[0] = out.phi.table[m.full_mask()];
    out.phi.validate();
  } else {
    out.phi = ChoiceFunction::minimum(m.size());
  }
  m.validate(out.sig);
  return out;
}

ModelFile read_model_file(const std::string& path) {
  return parse_model_file(read_text_file(path));
}

// --- Kripke structure files --------------------------------------------------

KripkeFile parse_kripke_file(const std::string& text) {
  KripkeFile out;
  auto& ks = out.ks;
  std::vector<std::pair<int, int>> edges;
  struct PredRow {
    std::string name;
    int world;
    std::vector<int> args;
  };
  std::vector<PredRow> pred_rows;

  auto world_at = [&](const SrcLine& ln, const std::string& name) {
    auto it = std::find(ks.worlds.begin(), ks.worlds.end(), name);
    if (it == ks.worlds.end()) fail(ln, "unknown world: " + name);
    return (int)(it - ks.worlds.begin());
  };
  auto elem_at2 = [&](const SrcLine& ln, const std::string& name) {
    auto it = std::find(ks.elems.begin(), ks.elems.end(), name);
    if (it == ks.elems.end()) fail(ln, "unknown element: " + name);
    return (int)(it - ks.elems.begin());
  };

  for (auto& ln : logical_lines(text)) {
    auto tok = tokens(ln.text);
    if (tok[0] == "worlds") {
      if (!ks.worlds.empty()) fail(ln, "duplicate worlds directive");
      if (tok.size() < 2) fail(ln, "worlds needs at least one name");
      ks.worlds.assign(tok.begin() + 1, tok.end());
      ks.dom.assign(ks.worlds.size(), 0);
      continue;
    }
    if (ks.worlds.empty()) fail(ln, "worlds must come first");
    if (tok[0] == "reach") {
      if (tok.size() != 3) fail(ln, "reach needs two world names");
      edges.emplace_back(world_at(ln, tok[1]), world_at(ln, tok[2]));
      continue;
    }
    if (tok[0] == "elems") {
      if (!ks.elems.empty()) fail(ln, "duplicate elems directive");
      if (tok.size() < 2 || tok.size() - 1 > 16) fail(ln, "elems needs 1..16 names");
      ks.elems.assign(tok.begin() + 1, tok.end());
      continue;
    }
    if (tok[0] == "dom") {
      if (tok.size() < 3) fail(ln, "dom needs a world and at least one element");
      int w = world_at(ln, tok[1]);
      for (size_t i = 2; i < tok.size(); i++) ks.dom[w] |= 1u << elem_at2(ln, tok[i]);
      continue;
    }
    if (tok[0] == "pred") {
      if (tok.size() < 3) fail(ln, "pred needs a name and a world");
      PredRow row;
      row.name = tok[1];
      row.world = world_at(ln, tok[2]);
      for (size_t i = 3; i < tok.size(); i++) row.args.push_back(elem_at2(ln, tok[i]));
      int arity = (int)row.args.size();
      auto known = out.sig.pred_arity(row.name);
      if (known && *known != arity) fail(ln, "inconsistent arity for predicate " + row.name);
      if (!known) out.sig.declare_pred(row.name, arity);
      pred_rows.push_back(std::move(row));
      continue;
    }
    if (tok[0] == "const") {
      if (tok.size() != 4 || tok[2] != "=") fail(ln, "const NAME = ELEM");
      ks.consts[tok[1]] = elem_at2(ln, tok[3]);
      out.sig.declare_fun(tok[1], 0);
      continue;
    }
    fail(ln, "unknown directive: " + tok[0]);
  }

  if (ks.worlds.empty()) throw TextioError("Kripke file has no worlds directive");
  int n = ks.size();
  // reflexive-transitive closure of the listed edges
  ks.reach.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; i++) ks.reach[i][i] = true;
  for (auto& [a, b] : edges) ks.reach[a][b] = true;
  for (int k = 0; k < n; k++)
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++)
        if (ks.reach[i][k] && ks.reach[k][j]) ks.reach[i][j] = true;
  // monotone completion of predicate rows and domains
  for (int a = 0; a < n; a++)
    for (int b = 0; b < n; b++)
      if (ks.reach[a][b]) ks.dom[b] |= ks.dom[a];
  for (auto& row : pred_rows) {
    auto& per_world = ks.preds[row.name];
    if (per_world.empty()) per_world.assign(n, {});
    for (int b = 0; b < n; b++)
      if (ks.reaches(row.world, b)) per_world[b].insert(row.args);
  }
  ks.validate();
  return out;
}

KripkeFile read_kripke_file(const std::string& path) {
  return parse_kripke_file(read_text_file(path));
}

// --- topological space files -------------------------------------------------

SpaceFile parse_space_file(const std::string& text) {
  SpaceFile out;
  auto& sp = out.space;
  FiniteModel names_only;  // reuse the element-set parser
  bool have_points = false;
  std::vector<uint32_t> opens;

  for (auto& ln : logical_lines(text)) {
    auto tok = tokens(ln.text);
    if (tok[0] == "points") {
      if (have_points) fail(ln, "duplicate points directive");
      if (tok.size() < 2 || tok.size() - 1 > 16) fail(ln, "points needs 1..16 names");
      sp.names.assign(tok.begin() + 1, tok.end());
      names_only.elems = sp.names;
      sp.n = (int)sp.names.size();
      have_points = true;
      continue;
    }
    if (!have_points) fail(ln, "points must come first");
    if (tok[0] == "open") {
      size_t i = 1;
      opens.push_back(parse_elem_set(ln, names_only, tok, i));
      if (i != tok.size()) fail(ln, "trailing tokens after the open set");
      continue;
    }
    if (tok[0] == "ext") {
      if (tok.size() < 3) fail(ln, "ext needs a predicate name and a set");
      size_t i = 2;
      out.interp[tok[1]] = parse_elem_set(ln, names_only, tok, i);
      if (i != tok.size()) fail(ln, "trailing tokens after the extension");
      continue;
    }
    fail(ln, "unknown directive: " + tok[0]);
  }

  if (!have_points) throw TextioError("space file has no points directive");
  opens.push_back(0);
  opens.push_back(sp.full_mask());
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  sp.opens = std::move(opens);
  sp.validate();
  return out;
}

SpaceFile read_space_file(const std::string& path) {
  return parse_space_file(read_text_file(path));
}

// --- derivation files --------------------------------------------------------

namespace {

Profile parse_profile(const SrcLine& ln, const std::string& name) {
  for (Profile p : {Profile::CP, Profile::CP_eps, Profile::CP_eps_star, Profile::CE,
                    Profile::CPI_eps})
    if (profile_name(p) == name) return p;
  fail(ln, "unknown profile: " + name);
}

Justification parse_justification(const SrcLine& ln, const std::string& text,
                                  const Signature& sig) {
  auto rest = trim(text);
  auto space = rest.find_first_of(" \t");
  std::string rule = space == std::string::npos ? rest : rest.substr(0, space);
  rest = space == std::string::npos ? "" : trim(rest.substr(space));

  auto no_args = [&](Justification j) {
    if (!rest.empty()) fail(ln, rule + " takes no arguments");
    return j;
  };
  auto ref_list = [&](size_t want) {
    std::vector<int> refs;
    for (auto& t : tokens(rest)) {
      long long v;
      if (!parse_int(t, v) || v < 1) fail(ln, "bad line reference: " + t);
      refs.push_back((int)v - 1);
    }
    if (want > 0 && refs.size() != want)
      fail(ln, rule + " needs " + std::to_string(want) + " line references");
    if (refs.empty()) fail(ln, rule + " needs at least one line reference");
    return refs;
  };
  auto term_arg = [&]() {
    if (rest.empty()) fail(ln, rule + " needs a term");
    return parse_term_at(ln, rest, sig);
  };

  if (rule == "premise") return no_args(j_premise());
  if (rule == "taut") return no_args(j_taut());
  if (rule == "tautcons") return j_tautcons(ref_list(0));
  if (rule == "mp") {
    auto refs = ref_list(2);
    return j_mp(refs[0], refs[1]);
  }
  if (rule == "inst") return j_inst(term_arg());
  if (rule == "exi") return j_exi(term_arg());
  if (rule == "exe" || rule == "gen") {
    auto tok = tokens(rest);
    if (tok.size() != 2) fail(ln, rule + " needs a line reference and a constant");
    long long v;
    if (!parse_int(tok[0], v) || v < 1) fail(ln, "bad line reference: " + tok[0]);
    return rule == "exe" ? j_exe((int)v - 1, tok[1]) : j_gen((int)v - 1, tok[1]);
  }
  if (rule == "eps") return j_eps(term_arg());
  if (rule == "epsex") return no_args(j_epsex());
  if (rule == "eps2") return no_args(j_eps2());
  if (rule == "eqrefl") return no_args(j_eqrefl());
  if (rule == "eqsym") return no_args(j_eqsym());
  if (rule == "eqsubst") return no_args(j_eqsubst());
  if (rule == "e1") return j_e1(term_arg());
  if (rule == "e2") return j_e2(term_arg());
  fail(ln, "unknown rule: " + rule);
}

}  // namespace

DerivationFile parse_derivation_file(const std::string& text) {
  DerivationFile out;
  bool have_profile = false;

  for (auto& ln : logical_lines(text)) {
    // numbered line?
    auto dot = ln.text.find('.');
    long long num;
    if (dot != std::string::npos && parse_int(trim(ln.text.substr(0, dot)), num)) {
      if (num != (long long)out.derivation.lines.size() + 1)
        fail(ln, "expected line number " + std::to_string(out.derivation.lines.size() + 1));
      auto segs = segments(ln.text.substr(dot + 1));
      if (segs.size() < 2 || segs.size() > 3)
        fail(ln, "expected FORMULA ; JUSTIFICATION [; LABEL]");
      auto f = parse_formula_at(ln, segs[0], out.derivation.sig);
      auto j = parse_justification(ln, segs[1], out.derivation.sig);
      out.derivation.add(f, j, segs.size() == 3 ? segs[2] : "");
      continue;
    }
    auto tok = tokens(ln.text);
    if (tok[0] == "profile") {
      if (have_profile) fail(ln, "duplicate profile directive");
      if (tok.size() != 2) fail(ln, "profile needs a name");
      out.profile = parse_profile(ln, tok[1]);
      have_profile = true;
      continue;
    }
    if (signature_directive(ln, tok, out.derivation.sig)) continue;
    fail(ln, "unknown directive: " + tok[0]);
  }

  if (!have_profile) throw TextioError("derivation file has no profile directive");
  if (out.derivation.lines.empty()) throw TextioError("derivation file has no lines");
  return out;
}

DerivationFile read_derivation_file(const std::string& path) {
  return parse_derivation_file(read_text_file(path));
}

std::string show_justification(const Justification& j) {
  std::string out = rule_name(j.rule);
  for (int r : j.refs) out += " " + std::to_string(r + 1);
  if (j.t) out += " " + print(j.t);
  if (!j.c.empty()) out += " " + j.c;
  return out;
}

std::string show_derivation(const Derivation& d) {
  std::string out;
  for (size_t i = 0; i < d.lines.size(); i++) {
    auto& ln = d.lines[i];
    out += std::to_string(i + 1) + ". " + print(ln.formula) + " ; " + show_justification(ln.just);
    if (!ln.label.empty()) out += " ; " + ln.label;
    out += "\n";
  }
  return out;
}

std::string show_derivation_file(Profile p, const Derivation& d) {
  std::string out = "profile " + profile_name(p) + "\n";
  if (d.sig.arithmetic) out += "arith\n";
  Signature base = d.sig.arithmetic ? Signature::with_arithmetic() : Signature{};
  for (auto& [name, arity] : d.sig.funcs)
    if (!base.fun_arity(name)) out += "fun " + name + " " + std::to_string(arity) + "\n";
  for (auto& [name, arity] : d.sig.preds)
    if (!base.pred_arity(name)) out += "pred " + name + " " + std::to_string(arity) + "\n";
  return out + show_derivation(d);
}

// --- critical-formula problem files -------------------------------------------

ProblemFile parse_problem_file(const std::string& text) {
  ProblemFile out;
  for (auto& ln : logical_lines(text)) {
    auto tok = tokens(ln.text);
    if (signature_directive(ln, tok, out.sig)) continue;
    if (tok[0] == "critical") {
      auto segs = segments(trim(ln.text.substr(ln.text.find("critical") + 8)));
      if (segs.size() != 3) fail(ln, "expected FORMULA ; eps TERM ; wit TERM");
      CriticalFormula cf;
      cf.formula = parse_formula_at(ln, segs[0], out.sig);
      auto eps_tok = tokens(segs[1]);
      auto wit_tok = tokens(segs[2]);
      if (eps_tok.empty() || eps_tok[0] != "eps") fail(ln, "second segment must be 'eps TERM'");
      if (wit_tok.empty() || wit_tok[0] != "wit") fail(ln, "third segment must be 'wit TERM'");
      cf.eps_term = parse_term_at(ln, trim(segs[1].substr(segs[1].find("eps") + 3)), out.sig);
      cf.witness = parse_term_at(ln, trim(segs[2].substr(segs[2].find("wit") + 3)), out.sig);
      cf.line = (int)out.criticals.size();
      out.criticals.push_back(std::move(cf));
      continue;
    }
    fail(ln, "unknown directive: " + tok[0]);
  }
  if (out.criticals.empty()) throw TextioError("problem file has no critical formulas");
  return out;
}

ProblemFile read_problem_file(const std::string& path) {
  return parse_problem_file(read_text_file(path));
}

}  // namespace epsilon
