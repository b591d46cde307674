// Command-line front end: every library operation as a subcommand over the
// text formats in include/epsilon/textio.hpp. Exit codes: 0 all checks pass,
// 1 a property or verification failed (a witness is printed), 2 usage or
// input error. Reports are deterministic: fixed iteration orders, no
// timestamps. EPSILON_KERNEL_THREADS bounds internal parallelism.

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "demos.hpp"
#include "epsilon/classical.hpp"
#include "epsilon/elimination.hpp"
#include "epsilon/heyting.hpp"
#include "epsilon/hsubst.hpp"
#include "epsilon/induction.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/kripke.hpp"
#include "epsilon/parallel.hpp"
#include "epsilon/parse.hpp"
#include "epsilon/print.hpp"
#include "epsilon/syntax.hpp"
#include "epsilon/textio.hpp"
#include "epsilon/transform.hpp"

using namespace epsilon;

namespace {

void say(const std::string& s) { std::fputs((s + "\n").c_str(), stdout); }
void complain(const std::string& s) { std::fputs((s + "\n").c_str(), stderr); }

void show_trace(const Trace& tr) {
  for (auto& ev : tr) say("RULE " + ev.rule + ": " + ev.before + " ⟹ " + ev.after);
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TextioError("cannot write file: " + path);
  out << text;
}

// Signature flags shared by the formula-consuming subcommands. NAME/ARITY
// tokens; when no flag is given, a convenience signature (arithmetic plus
// P/1, Q/1, R/2, c/0, d/0) covers quick command-line experiments.
struct SigFlags {
  bool arith = false;
  std::vector<std::string> preds, funs;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--arith", arith, "arithmetic reading (numerals, + * pd, < <=)");
    cmd->add_option("--pred", preds, "declare a predicate as NAME/ARITY")->delimiter(',');
    cmd->add_option("--fun", funs, "declare a function as NAME/ARITY")->delimiter(',');
  }
  bool any() const { return arith || !preds.empty() || !funs.empty(); }
  void merge_into(Signature& s) const {
    s.arithmetic = s.arithmetic || arith;
    auto split = [](const std::string& tok, bool pred, Signature& sig) {
      auto slash = tok.rfind('/');
      if (slash == std::string::npos || slash + 1 >= tok.size())
        throw TextioError("expected NAME/ARITY, got: " + tok);
      int arity = std::stoi(tok.substr(slash + 1));
      if (pred)
        sig.declare_pred(tok.substr(0, slash), arity);
      else
        sig.declare_fun(tok.substr(0, slash), arity);
    };
    for (auto& t : preds) split(t, true, s);
    for (auto& t : funs) split(t, false, s);
  }
  Signature build() const {
    Signature s;
    if (!any()) {
      s = Signature::with_arithmetic();
      s.declare_pred("P", 1);
      s.declare_pred("Q", 1);
      s.declare_pred("R", 2);
      s.declare_fun("c", 0);
      s.declare_fun("d", 0);
      return s;
    }
    merge_into(s);
    return s;
  }
};

// --formula TEXT (repeatable) and/or --file PATH; file declarations extend
// the flag signature.
struct FormulaInput {
  std::vector<std::string> texts;
  std::string file;
  SigFlags sig_flags;

  void attach(CLI::App* cmd, bool with_sig = true) {
    cmd->add_option("--formula", texts, "formula text");
    cmd->add_option("--file", file, "formula file (see README for the format)");
    if (with_sig) sig_flags.attach(cmd);
  }
  // Returns the formulas plus the signature they were parsed against. When a
  // base signature is given the flags extend it instead of replacing it.
  std::pair<Signature, std::vector<FormulaPtr>> load(const Signature* base = nullptr) const {
    Signature sig;
    if (base) {
      sig = *base;
      sig_flags.merge_into(sig);
    } else {
      sig = sig_flags.build();
    }
    std::vector<FormulaPtr> fs;
    if (!file.empty()) {
      auto ff = read_formula_file(file);
      sig.arithmetic = sig.arithmetic || ff.sig.arithmetic;
      for (auto& [n, k] : ff.sig.funcs) sig.declare_fun(n, k);
      for (auto& [n, k] : ff.sig.preds) sig.declare_pred(n, k);
      fs = ff.formulas;
    }
    for (auto& t : texts) fs.push_back(parse_formula(t, sig));
    if (fs.empty()) throw TextioError("no formula given (use --formula or --file)");
    return {sig, fs};
  }
};

int cmd_translate(const FormulaInput& in, const std::string& mode, bool trace,
                  const std::string& out_path) {
  Mode m = mode == "intuitionistic" ? Mode::Intuitionistic : Mode::Classical;
  auto [sig, fs] = in.load();
  std::string artifact;
  for (auto& f : fs) {
    Trace tr;
    auto g = epsilon_translate(f, m, trace ? &tr : nullptr);
    show_trace(tr);
    say(print(g));
    artifact += print(g) + "\n";
  }
  write_out(out_path, artifact);
  return 0;
}

int cmd_prenex(const FormulaInput& in, bool trace, const std::string& out_path) {
  auto [sig, fs] = in.load();
  std::string artifact;
  for (auto& f : fs) {
    Trace tr;
    auto p = prenex(f, trace ? &tr : nullptr);
    show_trace(tr);
    std::string prefix;
    for (auto& [q, v] : p.prefix)
      prefix += (q == Quant::Forall ? "forall " : "exists ") + v + ". ";
    say("prefix: " + (prefix.empty() ? "(empty)" : prefix));
    say("matrix: " + print(p.matrix));
    say(print(p.attach()));
    artifact += print(p.attach()) + "\n";
  }
  write_out(out_path, artifact);
  return 0;
}

int cmd_skolemize(const FormulaInput& in, bool trace, const std::string& out_path) {
  auto [sig, fs] = in.load();
  Trace tr;
  auto res = skolem_resolve(fs, sig, trace ? &tr : nullptr);
  show_trace(tr);
  std::string artifact;
  for (auto& d : res.defs) {
    std::string params;
    for (auto& p : d.params) params += (params.empty() ? "" : ", ") + p;
    say("define " + d.name + "(" + params + ") := " + print(d.definition));
  }
  for (auto& a : res.axioms) {
    say(print(a));
    artifact += print(a) + "\n";
  }
  auto mats = matrices(res.axioms);
  for (auto& m : mats) say("matrix: " + print(m));
  write_out(out_path, artifact);
  return 0;
}

int cmd_eval(const std::string& model_path, const FormulaInput& in, const std::string& phi_mode,
             const std::vector<std::string>& env_pairs) {
  auto mf = read_model_file(model_path);
  if (phi_mode == "file" && !mf.has_phi)
    throw TextioError("--phi file requested but the model file has no phi rows");
  ChoiceFunction cf =
      (phi_mode == "min" || !mf.has_phi) ? ChoiceFunction::minimum(mf.model.size()) : mf.phi;
  Valuation env;
  for (auto& pair : env_pairs) {
    auto eq = pair.find('=');
    if (eq == std::string::npos) throw TextioError("expected VAR=ELEM, got: " + pair);
    int e = mf.model.elem_index(pair.substr(eq + 1));
    if (e < 0) throw TextioError("unknown element: " + pair.substr(eq + 1));
    env[pair.substr(0, eq)] = e;
  }

  // texts may be formulas or terms; parse against the model's signature
  Signature sig = mf.sig;
  in.sig_flags.merge_into(sig);
  std::vector<std::string> texts;
  if (!in.file.empty()) {
    auto ff = read_formula_file(in.file);
    sig.arithmetic = sig.arithmetic || ff.sig.arithmetic;
    for (auto& [n, k] : ff.sig.funcs) sig.declare_fun(n, k);
    for (auto& [n, k] : ff.sig.preds) sig.declare_pred(n, k);
    for (auto& f : ff.formulas) texts.push_back(print(f));
  }
  for (auto& t : in.texts) texts.push_back(t);
  if (texts.empty()) throw TextioError("no formula given (use --formula or --file)");

  for (auto& t : texts) {
    auto parsed = parse_any(t, sig);
    if (std::holds_alternative<FormulaPtr>(parsed)) {
      bool v = eval_formula(std::get<FormulaPtr>(parsed), mf.model, cf, env);
      say(t + " : " + (v ? "true" : "false"));
    } else {
      int e = eval_term(std::get<TermPtr>(parsed), mf.model, cf, env);
      say(t + " : " + mf.model.elems[e]);
    }
  }
  return 0;
}

int cmd_check_model(const std::string& model_path) {
  ModelFile mf;
  try {
    mf = read_model_file(model_path);
  } catch (const SemanticsError& e) {
    say(std::string("model check FAILED: ") + e.what());
    return 1;
  }
  say("model ok: " + std::to_string(mf.model.size()) + " elements, " +
      std::to_string(mf.model.funcs.size()) + " functions, " +
      std::to_string(mf.model.preds.size()) + " predicates" +
      (mf.has_phi ? ", explicit choice table" : ", minimum choice"));
  return 0;
}

int cmd_heyting(const std::string& space_path, const FormulaInput& in, bool require_full) {
  auto sf = read_space_file(space_path);
  Signature sig;
  for (auto& [name, ext] : sf.interp) sig.declare_pred(name, 1);
  auto [s2, fs] = in.load(&sig);
  bool all_full = true;
  for (auto& f : fs) {
    uint32_t v = heyting_eval(f, sf.space, sf.interp);
    bool full = v == sf.space.full_mask();
    all_full = all_full && full;
    say(print(f) + " : " + sf.space.set_name(v) + (full ? " (full)" : ""));
  }
  if (require_full && !all_full) {
    say("witness: a formula above is not the full space");
    return 1;
  }
  return 0;
}

int cmd_kripke_check(const std::string& structure_path, const FormulaInput& in,
                     const std::string& world) {
  auto kf = read_kripke_file(structure_path);
  auto [sig, fs] = in.load(&kf.sig);
  int at = -1;
  if (!world.empty()) {
    for (int w = 0; w < kf.ks.size(); w++)
      if (kf.ks.worlds[w] == world) at = w;
    if (at < 0) throw TextioError("unknown world: " + world);
  }
  bool all_forced_at = true;
  for (auto& f : fs) {
    if (contains_eps(f))
      throw TextioError("kripke-check takes eps-free formulas; choice entries are "
                        "internal to lem-search");
    std::string row = print(f) + " :";
    std::vector<bool> forced(kf.ks.size());
    for (int w = 0; w < kf.ks.size(); w++) {
      forced[w] = kripke_force(kf.ks, w, f);
      row += " " + kf.ks.worlds[w] + "=" + (forced[w] ? "forced" : "open");
    }
    say(row);
    // persistence along reach, reported per formula
    for (int a = 0; a < kf.ks.size(); a++)
      for (int b = 0; b < kf.ks.size(); b++)
        if (kf.ks.reaches(a, b) && forced[a] && !forced[b]) {
          say("persistence VIOLATION: forced at " + kf.ks.worlds[a] + ", open at " +
              kf.ks.worlds[b]);
          return 1;
        }
    if (at >= 0) all_forced_at = all_forced_at && forced[at];
  }
  if (at >= 0 && !all_forced_at) {
    say("witness: not forced at " + world);
    return 1;
  }
  return 0;
}

int cmd_lem_search(int worlds, int domain) {
  auto rep = bell_lem_search(worlds, domain);
  say("structures: " + std::to_string(rep.structures));
  say("choice combinations: " + std::to_string(rep.choice_combos));
  say("existence schema forced at the root: " + std::to_string(rep.eps_admissible));
  say("... with extensionality forced too: " + std::to_string(rep.eps2_admissible));
  say(std::to_string(rep.lem_countermodels) + " countermodels");
  say("LEM refuted with the existence schema alone: " +
      std::to_string(rep.lem_refuted_without_eps2));
  say("global-variant countermodels (recorded, not asserted): " +
      std::to_string(rep.global_variant_countermodels));
  for (auto& n : rep.notes) say("note: " + n);
  return rep.ok() ? 0 : 1;
}

int cmd_prove_check(const std::vector<std::string>& paths) {
  struct Row {
    std::string text;
    bool ok;
  };
  std::vector<Row> rows(paths.size());
  parallel_for(paths.size(), [&](std::size_t i) {
    try {
      auto df = read_derivation_file(paths[i]);
      auto rep = check(df.derivation, df.profile);
      if (rep.ok)
        rows[i] = {paths[i] + ": ok, " + std::to_string(rep.checked) + " lines under " +
                       profile_name(df.profile) + ", conclusion " +
                       print(df.derivation.conclusion()),
                   true};
      else
        rows[i] = {paths[i] + ": FAILED: " + rep.message, false};
    } catch (const std::exception& e) {
      rows[i] = {paths[i] + ": FAILED: " + std::string(e.what()), false};
    }
  });
  bool all = true;
  for (auto& r : rows) {
    say(r.text);
    all = all && r.ok;
  }
  return all ? 0 : 1;
}

int cmd_eliminate(const std::string& derivation_path, bool trace, const std::string& out_path) {
  auto df = read_derivation_file(derivation_path);
  check_or_throw(df.derivation, Profile::CP_eps_star);
  std::vector<std::string> tr;
  auto out = second_epsilon_theorem(df.derivation, trace ? &tr : nullptr);
  for (auto& t : tr) say(t);
  auto rep = check(out, Profile::CP);
  say("input: " + std::to_string(df.derivation.lines.size()) + " lines, " +
      std::to_string(derivation_epsilon_terms(df.derivation).size()) + " epsilon terms");
  say("output: " + std::to_string(out.lines.size()) + " lines, " +
      std::to_string(derivation_epsilon_terms(out).size()) + " epsilon terms, " +
      (rep.ok ? "checks under CP" : "CHECK FAILED: " + rep.message));
  say("conclusion: " + print(out.conclusion()));
  say("");
  std::fputs(show_derivation(out).c_str(), stdout);
  write_out(out_path, show_derivation_file(Profile::CP, out));
  return rep.ok ? 0 : 1;
}

int cmd_replay_induction(const FormulaInput& in, std::string var, bool proper, uint64_t cap,
                         const std::string& out_path) {
  auto [sig, fs] = in.load();
  if (fs.size() != 1) throw TextioError("replay-induction takes exactly one formula");
  auto f = fs[0];
  if (var.empty()) {
    auto fv = free_vars(f);
    if (fv.size() != 1)
      throw TextioError("the formula must have exactly one free variable (or pass --var)");
    var = *fv.begin();
  }
  auto rep = replay_induction(f, var, proper, cap);
  std::fputs(show_derivation(rep.derivation).c_str(), stdout);
  say("");
  say("profile: " + std::string(proper ? "CP_eps_star" : "CP_eps") +
      (rep.check.ok ? ", checks" : ", CHECK FAILED: " + rep.check.message));
  say("milestone (8) shape: " + std::string(rep.line8_shape_ok ? "ok" : "WRONG"));
  std::string truths;
  for (bool b : rep.line_truth) truths += b ? 'T' : 'F';
  say("line truth at cap " + std::to_string(rep.cap) + ": " + truths +
      (rep.all_lines_true ? " (all true)" : " (NOT all true)"));
  write_out(out_path,
            show_derivation_file(proper ? Profile::CP_eps_star : Profile::CP_eps, rep.derivation));
  return rep.check.ok && rep.line8_shape_ok ? 0 : 1;
}

int cmd_h_substitute(const std::string& problem_path, uint64_t cap, long long max_iter,
                     bool trace) {
  auto pf = read_problem_file(problem_path);
  say("critical formulas: " + std::to_string(pf.criticals.size()));
  auto res = hsubst_solve(pf.criticals, cap, max_iter);
  if (trace)
    for (auto& ev : res.history)
      say(ev.kind + " " + print(ev.term) + ": " + std::to_string(ev.old_value) + " -> " +
          std::to_string(ev.new_value) + " (critical " + std::to_string(ev.critical + 1) + ")");
  for (auto& n : res.notes) say("note: " + n);
  say("sweeps: " + std::to_string(res.iterations) + ", events: " +
      std::to_string(res.history.size()));
  say("assignment: " + show_assignment(res.assignment));
  if (!res.resolved) {
    say("NOT RESOLVED");
    return 1;
  }
  say("resolved");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "epsilon-kernel: choice-operator logic toolbench (translations, finite semantics, "
      "proof checking, epsilon elimination, iterative substitution)"};
  app.require_subcommand(1);

  // translate
  auto* translate = app.add_subcommand("translate", "rewrite quantifiers into choice terms");
  FormulaInput tr_in;
  tr_in.attach(translate);
  std::string tr_mode = "classical";
  bool tr_trace = false;
  std::string tr_out;
  translate->add_option("--mode", tr_mode, "classical | intuitionistic")
      ->check(CLI::IsMember({"classical", "intuitionistic"}));
  translate->add_flag("--trace", tr_trace, "emit each rewrite step");
  translate->add_option("--out", tr_out, "also write the result here");

  // prenex
  auto* pre = app.add_subcommand("prenex", "pull quantifiers to a prefix");
  FormulaInput pre_in;
  pre_in.attach(pre);
  bool pre_trace = false;
  std::string pre_out;
  pre->add_flag("--trace", pre_trace, "emit each commutation step");
  pre->add_option("--out", pre_out, "also write the result here");

  // skolemize
  auto* sko = app.add_subcommand("skolemize", "resolve prenex existentials into defined symbols");
  FormulaInput sko_in;
  sko_in.attach(sko);
  bool sko_trace = false;
  std::string sko_out;
  sko->add_flag("--trace", sko_trace, "emit each resolution step");
  sko->add_option("--out", sko_out, "also write the axioms here");

  // eval
  auto* ev = app.add_subcommand("eval", "evaluate a formula or term in a finite model");
  std::string ev_model, ev_phi = "file";
  std::vector<std::string> ev_env;
  FormulaInput ev_in;
  ev->add_option("--model", ev_model, "model file")->required();
  ev_in.attach(ev);
  ev->add_option("--phi", ev_phi, "min | file: choice-function source")
      ->check(CLI::IsMember({"min", "file"}));
  ev->add_option("--env", ev_env, "free-variable binding VAR=ELEM");

  // check-model
  auto* cm = app.add_subcommand("check-model", "validate a model file");
  std::string cm_model;
  cm->add_option("--model", cm_model, "model file")->required();

  // heyting
  auto* hey = app.add_subcommand("heyting", "evaluate over a topological space");
  std::string hey_space;
  bool hey_full = false;
  FormulaInput hey_in;
  hey->add_option("--space", hey_space, "space file")->required();
  hey_in.attach(hey);
  hey->add_flag("--require-full", hey_full, "fail unless every value is the full space");

  // kripke-check
  auto* kc = app.add_subcommand("kripke-check", "force formulas over a Kripke structure");
  std::string kc_structure, kc_world;
  FormulaInput kc_in;
  kc->add_option("--structure", kc_structure, "Kripke structure file")->required();
  kc_in.attach(kc);
  kc->add_option("--world", kc_world, "require forcing at this world");

  // lem-search
  auto* lem = app.add_subcommand("lem-search", "exhaustive excluded-middle countermodel search");
  int lem_worlds = 3, lem_domain = 2;
  lem->add_option("--worlds", lem_worlds, "max worlds (default 3)")->check(CLI::Range(1, 3));
  lem->add_option("--domain", lem_domain, "max domain size (default 2)")->check(CLI::Range(1, 2));

  // prove-check
  auto* pc = app.add_subcommand("prove-check", "check derivation files");
  std::vector<std::string> pc_paths;
  pc->add_option("files", pc_paths, "derivation files")->required();

  // eliminate-epsilon
  auto* el = app.add_subcommand("eliminate-epsilon",
                                "transform a proper derivation into an epsilon-free one");
  std::string el_path, el_out;
  bool el_trace = false;
  el->add_option("--derivation", el_path, "derivation file")->required();
  el->add_flag("--trace", el_trace, "emit per-round elimination steps");
  el->add_option("--out", el_out, "write the resulting derivation file here");

  // replay-induction
  auto* ri = app.add_subcommand("replay-induction", "derive induction from the order axioms");
  FormulaInput ri_in;
  ri_in.attach(ri);
  std::string ri_var, ri_out;
  bool ri_proper = false;
  uint64_t ri_cap = 12;
  ri->add_option("--var", ri_var, "induction variable (default: the free variable)");
  ri->add_flag("--proper", ri_proper, "check in the proper fragment");
  ri->add_option("--cap", ri_cap, "semantic evaluation bound (default 12)")
      ->check(CLI::PositiveNumber);
  ri->add_option("--out", ri_out, "write the derivation file here");

  // h-substitute
  auto* hs = app.add_subcommand("h-substitute", "iterative repair over critical formulas");
  std::string hs_problem;
  uint64_t hs_cap = 64;
  long long hs_max_iter = 0;
  bool hs_trace = false;
  hs->add_option("--problem", hs_problem, "problem file")->required();
  hs->add_option("--cap", hs_cap, "value bound (default 64)")->check(CLI::PositiveNumber);
  hs->add_option("--max-iter", hs_max_iter, "sweep budget (default 10 * cap * terms)");
  hs->add_flag("--trace", hs_trace, "emit each repair/reset event");

  // demo
  auto* dm = app.add_subcommand("demo", "scripted scenarios with fixed caps");
  std::string dm_name;
  uint64_t dm_cap = 0;
  bool dm_trace = false;
  dm->add_option("name", dm_name,
                 "a1a5 | infinitesimal | cardinals | induction | nested-substitution | bell | "
                 "heyting-gap")
      ->required();
  dm->add_option("--cap", dm_cap, "numeric cap override");
  dm->add_flag("--trace", dm_trace, "extra detail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*translate) return cmd_translate(tr_in, tr_mode, tr_trace, tr_out);
    if (*pre) return cmd_prenex(pre_in, pre_trace, pre_out);
    if (*sko) return cmd_skolemize(sko_in, sko_trace, sko_out);
    if (*ev) return cmd_eval(ev_model, ev_in, ev_phi, ev_env);
    if (*cm) return cmd_check_model(cm_model);
    if (*hey) return cmd_heyting(hey_space, hey_in, hey_full);
    if (*kc) return cmd_kripke_check(kc_structure, kc_in, kc_world);
    if (*lem) return cmd_lem_search(lem_worlds, lem_domain);
    if (*pc) return cmd_prove_check(pc_paths);
    if (*el) return cmd_eliminate(el_path, el_trace, el_out);
    if (*ri) return cmd_replay_induction(ri_in, ri_var, ri_proper, ri_cap, ri_out);
    if (*hs) return cmd_h_substitute(hs_problem, hs_cap, hs_max_iter, hs_trace);
    if (*dm) return run_demo(dm_name, dm_cap, dm_trace);
  } catch (const std::exception& e) {
    complain(std::string("input error: ") + e.what());
    return 2;
  }
  return 2;
}
