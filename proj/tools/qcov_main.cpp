// qcov: coverings of bound quiver categories over prime fields.
//
// Every subcommand prints a deterministic JSON report on stdout and a short
// human summary on stderr. Exit codes: 0 = property holds / computation
// done, 1 = property fails (witness in the report), 2 = input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qcov/cleaving.hpp"
#include "qcov/galois.hpp"
#include "qcov/io.hpp"
#include "qcov/krullschmidt.hpp"
#include "qcov/transport.hpp"

using namespace qcov;
using ojson = nlohmann::ordered_json;

#ifndef QCOV_CORPUS_DIR
#define QCOV_CORPUS_DIR "data/corpus"
#endif

namespace {

struct Options {
  std::optional<fp_t> prime;
  std::uint64_t seed = 0;
};

int emit(const ojson& report, bool ok, const std::string& summary) {
  std::cout << report.dump(2) << "\n";
  std::cerr << summary << "\n";
  return ok ? 0 : 1;
}

ojson mat_to_json(const Mat& m) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson vec_to_json(const Vec& v) {
  ojson arr = ojson::array();
  for (fp_t x : v) arr.push_back(x);
  return arr;
}

ojson combo_json(const Category& cat, std::size_t a, std::size_t b, const Vec& coords) {
  ojson arr = ojson::array();
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] == 0) continue;
    ojson term;
    term["coeff"] = coords[k];
    term["basis"] = cat.basis_label(a, b, k);
    arr.push_back(std::move(term));
  }
  return arr;
}

CoveringCertificate need_certificate(const LinearFunctor& f) {
  CoveringOutcome out = check_covering(f);
  if (!out.ok()) throw Error("functor is not a covering: " + out.witness);
  return std::move(*out.certificate);
}

ojson rep_summary(const Representation& x) {
  ojson j;
  ojson dims = ojson::array();
  for (std::size_t a = 0; a < x.category().object_count(); ++a) dims.push_back(x.dim(a));
  j["dims"] = std::move(dims);
  j["total_dim"] = x.total_dim();
  return j;
}

// ---------------------------------------------------------------- validate

int cmd_validate(Workspace& ws, const std::string& file) {
  std::ifstream probe(file);
  if (!probe) throw Error(file + ": cannot open file");
  nlohmann::json j = nlohmann::json::parse(probe, nullptr, true, true);
  ojson report;
  report["command"] = "validate";
  report["file"] = file;

  if (j.contains("vertices")) {
    const BoundCategory& cat = ws.category(file);
    report["type"] = "category";
    report["objects"] = cat.object_count();
    report["total_hom_dim"] = cat.total_hom_dim();
    LocallyBoundedReport lb = validate_locally_bounded(cat);
    report["locally_bounded"] = lb.ok;
    report["connected"] = is_connected(cat);
    report["schurian"] = is_schurian(cat);
    report["jn_contained_in_relation_ideal"] = cat.build_report().jn_contained_in_relation_ideal;
    return emit(report, lb.ok, "category: loaded, locally bounded");
  }
  if (j.contains("arrow_images") && j.contains("source")) {
    const LinearFunctor& f = ws.functor(file);
    FunctorReport fr = check_functor(f);
    report["type"] = "functor";
    report["well_defined"] = fr.ok;
    if (!fr.ok) report["witness"] = fr.witness;
    return emit(report, fr.ok, fr.ok ? "functor: well defined" : "functor: " + fr.witness);
  }
  if (j.contains("dims")) {
    const Representation& x = ws.representation(file);
    report["type"] = "representation";
    report["rep"] = rep_summary(x);
    return emit(report, true, "representation: valid");
  }
  if (j.contains("elements")) {
    const FiniteGroup& g = ws.group(file);
    report["type"] = "group";
    report["order"] = g.order();
    if (j.contains("action")) {
      const GroupAction& act = ws.action(file);
      ActionReport ar = check_action(act);
      report["action_ok"] = ar.ok;
      report["free"] = ar.free;
      if (!ar.ok) report["witness"] = ar.witness;
      return emit(report, ar.ok, ar.ok ? "group action: free" : "group action: " + ar.witness);
    }
    return emit(report, true, "group: valid");
  }
  if (j.contains("degrees")) {
    const Grading& g = ws.grading(file);
    GradingReport gr = check_grading(g);
    report["type"] = "grading";
    report["homogeneous"] = gr.ok;
    if (!gr.ok) report["witness"] = gr.witness;
    return emit(report, gr.ok, gr.ok ? "grading: homogeneous" : "grading: " + gr.witness);
  }
  if (j.contains("vertex_map")) {
    const auto& qm = ws.quiver_map(file);
    StarOutcome star = check_quiver_covering_map(qm.source->quiver(), qm.target->quiver(), qm.map);
    report["type"] = "quiver_map";
    report["covering_map"] = star.ok;
    if (!star.ok) report["witness"] = star.witness;
    return emit(report, star.ok, star.ok ? "quiver map: covering map" : "quiver map: " + star.witness);
  }
  throw Error(file + ": unrecognized schema");
}

// ------------------------------------------------------------------- corpus

struct CorpusRun {
  ojson items = ojson::array();
  bool all_ok = true;

  void add(const std::string& name, bool ok, const std::string& detail = "") {
    ojson item;
    item["name"] = name;
    item["pass"] = ok;
    if (!detail.empty()) item["detail"] = detail;
    items.push_back(std::move(item));
    all_ok = all_ok && ok;
    std::cerr << (ok ? "[pass] " : "[FAIL] ") << name << (detail.empty() ? "" : ": " + detail)
              << "\n";
  }
};

int cmd_corpus(const std::string& dir, std::uint64_t seed) {
  Workspace ws;
  auto path = [&](const std::string& n) { return dir + "/" + n; };
  CorpusRun run;

  // Example (b): balanced covering of order 2
  {
    const LinearFunctor& f = ws.functor(path("ex_b_F.functor.json"));
    CoveringOutcome cov = check_covering(f);
    run.add("ex_b covering", cov.ok());
    if (cov.ok()) {
      run.add("ex_b balanced", check_balanced(*cov.certificate).balanced);
      OrderOutcome ord = covering_order(*cov.certificate);
      run.add("ex_b order 2", ord.order == 2 && ord.bookkeeping_ok);
      bool lambda_rho_equal = true, cleaves = true;
      for (std::uint64_t s = 0; s < 5; ++s) {
        Representation x = random_representation(f.source(), seed + s, 6);
        lambda_rho_equal = lambda_rho_equal &&
                           *push_down(*cov.certificate, x).rep ==
                               *push_down_right(*cov.certificate, x).rep;
        cleaves = cleaves && cleaving_test(*cov.certificate, x, seed + s).splits;
      }
      run.add("ex_b F_lambda equals F_rho on samples", lambda_rho_equal);
      run.add("ex_b cleaving splits on samples", cleaves);
    }
  }

  // Example (c): covering, not balanced, the paper's lifts and non-summand
  {
    const LinearFunctor& f = ws.functor(path("ex_c_F.functor.json"));
    const BoundCategory& cA = f.source();
    CoveringOutcome cov = check_covering(f);
    run.add("ex_c covering", cov.ok());
    if (cov.ok()) {
      BalancedOutcome bal = check_balanced(*cov.certificate);
      run.add("ex_c not balanced with witness (a2, b2, beta)",
              !bal.balanced && cA.object_name(bal.witness_a) == "a2" &&
                  cA.object_name(bal.witness_b) == "b2",
              bal.witness_label);
      const Category& cB = f.target();
      Vec beta(cB.hom_dim(cB.object_id("a"), cB.object_id("b")), 0);
      beta[1] = 1;
      LiftFamily outfam = cov.certificate->lift_out(cA.object_id("a2"), cB.object_id("b"), beta);
      LiftFamily infam = cov.certificate->lift_in(cB.object_id("a"), cA.object_id("b2"), beta);
      run.add("ex_c out-lift of beta at a2 is -alpha2 at b2",
              outfam.component_at(cA.object_id("b2")) == Vec{cA.field().reduce(-1)});
      run.add("ex_c in-lift of beta at b2 vanishes from a2",
              vec_is_zero(infam.component_at(cA.object_id("a2"))));

      const Representation& x = ws.representation(path("ex_c_X.rep.json"));
      Representation big = pull_up(f, *push_down(*cov.certificate, x).rep);
      run.add("ex_c F.F_lambda X has dims (1,1,1,1)",
              big.dims() == std::vector<std::size_t>(4, 1));
      Decomposition d = decompose(big, seed);
      run.add("ex_c F.F_lambda X indecomposable", d.summands.size() == 1);
      run.add("ex_c X is not a summand", !is_direct_summand(x, big, seed).summand);
      run.add("ex_c cleaving does not split", !cleaving_test(*cov.certificate, x, seed).splits);
    }
  }

  // Example (a): free action, quotient isomorphic to B, balanced of order 2
  {
    const GroupAction& action = ws.action(path("ex_a_C2.group.json"));
    run.add("ex_a action free", check_action(action).ok);
    Quotient q = galois_quotient(*action.cat, action);
    CoveringOutcome cov = check_covering(*q.projection);
    run.add("ex_a projection covering", cov.ok());
    if (cov.ok()) {
      run.add("ex_a projection balanced", check_balanced(*cov.certificate).balanced);
      OrderOutcome ord = covering_order(*cov.certificate);
      run.add("ex_a order 2 and 2*3=6", ord.order == 2 && ord.bookkeeping_ok);
    }
    const BoundCategory& b = ws.category(path("ex_a_B.cat.json"));
    run.add("ex_a quotient isomorphic to B", find_category_isomorphism(b, *q.cat).found);
  }

  // A2 double cover: induced functor is a balanced covering
  {
    const auto& qm = ws.quiver_map(path("a2_double.qmap.json"));
    InducedOutcome ind = induced_functor(*qm.source, *qm.target, qm.map);
    run.add("a2 double induced functor admissible", ind.admissible);
    if (ind.functor) {
      CoveringOutcome cov = check_covering(*ind.functor);
      run.add("a2 double balanced covering",
              cov.ok() && check_balanced(*cov.certificate).balanced);
    }
  }

  // Schurian covering: balanced automatically, and F_lambda F. M = M^2
  {
    const LinearFunctor& f = ws.functor(path("schurian_F.functor.json"));
    CoveringOutcome cov = check_covering(f);
    run.add("schurian covering", cov.ok());
    if (cov.ok()) {
      run.add("schurian balanced automatically", check_balanced(*cov.certificate).balanced);
      bool prop = true;
      for (std::uint64_t s = 0; s < 5 && prop; ++s) {
        Representation m = random_representation(f.target(), seed + s, 5);
        Representation lifted = pull_up(f, m);
        Transported down = push_down(*cov.certificate, lifted);
        DirectSum mm = direct_sum({&m, &m});
        prop = are_isomorphic(*down.rep, *mm.rep, seed + s).isomorphic;
      }
      run.add("schurian F_lambda F. M isomorphic to M + M on samples", prop);
    }
  }

  // Smash suite: split grading of the Kronecker target
  {
    const Grading& g = ws.grading(path("ex_c_B_split.grading.json"));
    SmashCategory smash = smash_product(*g.cat, g);
    run.add("smash hom dims match graded components", smash.hom_dims_match_components);
    run.add("smash schurian", is_schurian(*smash.cat));
    run.add("smash canonical action free", check_action(*smash.action).ok);
    Quotient q = galois_quotient(*smash.cat, *smash.action);
    ComparisonOutcome cmp = smash_quotient_comparison(*g.cat, smash, q);
    run.add("smash quotient isomorphic to B", cmp.isomorphism);
  }

  // Squares: E.F = id everywhere; square 2 verdict equals balancedness
  {
    std::vector<std::string> functors{"ex_b_F.functor.json", "ex_c_F.functor.json",
                                      "schurian_F.functor.json"};
    bool ef = true, biconditional = true;
    for (const std::string& name : functors) {
      const LinearFunctor& f = ws.functor(path(name));
      CoveringCertificate cert = need_certificate(f);
      RetractionTable table = retraction_table(cert);
      ef = ef && table.retraction_of_f;
      SquaresReport sq = check_naturality_squares(table);
      biconditional = biconditional && sq.square1 &&
                      (sq.square2 == check_balanced(cert).balanced);
    }
    run.add("retraction tables satisfy E.F = id", ef);
    run.add("square 2 verdict equals balancedness", biconditional);
  }

  ojson report;
  report["command"] = "corpus";
  report["dir"] = dir;
  report["seed"] = seed;
  report["items"] = std::move(run.items);
  report["all_pass"] = run.all_ok;
  return emit(report, run.all_ok,
              run.all_ok ? "corpus: all expected verdicts match" : "corpus: FAILURES");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverings of bound quiver categories over prime fields"};
  app.require_subcommand(1);

  Options opt;
  fp_t prime_flag = 0;
  auto* prime_opt = app.add_option("--prime", prime_flag, "field prime (default: from files, else 32003)");
  app.add_option("--seed", opt.seed, "seed for all randomized searches (default 0)");

  std::string file, functor_path, rep_path, rep2_path, cat_path, group_path, grading_path;
  std::string grading_b_path, fmap_path, gmap_path, compare_path, out_path, morphism_text;
  std::string anchor, direction = "out", dir = QCOV_CORPUS_DIR;
  std::size_t cleave_samples = 0;
  bool full = false, with_witnesses = false, json_flag = false;

  auto* validate = app.add_subcommand("validate", "load and validate any qcov file");
  validate->add_option("--file", file)->required();

  auto* hom = app.add_subcommand("hom", "basis of Hom(X, Y) for two representations");
  hom->add_option("--x", rep_path)->required();
  hom->add_option("--y", rep2_path)->required();
  hom->add_flag("--full", full, "include the basis matrices");

  auto* covering = app.add_subcommand("check-covering", "verify the covering conditions");
  covering->add_option("--functor", functor_path)->required();
  covering->add_flag("--full", full, "include the covering matrices");

  auto* balanced = app.add_subcommand("check-balanced", "out-lifts equal in-lifts");
  balanced->add_option("--functor", functor_path)->required();

  auto* order = app.add_subcommand("order", "fiber cardinality over a connected base");
  order->add_option("--functor", functor_path)->required();

  auto* lift = app.add_subcommand("lift", "lift family of a morphism of the base");
  lift->add_option("--functor", functor_path)->required();
  lift->add_option("--morphism", morphism_text, "path combination JSON")->required();
  lift->add_option("--anchor", anchor, "fiber object")->required();
  lift->add_option("--direction", direction)->check(CLI::IsMember({"out", "in"}));

  auto* pushdown = app.add_subcommand("push-down", "F_lambda of a representation");
  pushdown->add_option("--functor", functor_path)->required();
  pushdown->add_option("--rep", rep_path)->required();
  pushdown->add_option("--out", out_path, "write the representation JSON here");

  auto* pullup = app.add_subcommand("pull-up", "F_bullet of a representation of the base");
  pullup->add_option("--functor", functor_path)->required();
  pullup->add_option("--rep", rep_path)->required();
  pullup->add_option("--out", out_path);

  auto* pushrho = app.add_subcommand("push-rho", "right push-down F_rho");
  pushrho->add_option("--functor", functor_path)->required();
  pushrho->add_option("--rep", rep_path)->required();
  pushrho->add_option("--out", out_path);

  auto* schurian = app.add_subcommand("schurian", "are all hom spaces of dim <= 1");
  schurian->add_option("--category", cat_path)->required();

  auto* quotient = app.add_subcommand("quotient", "Galois quotient by a free action");
  quotient->add_option("--group", group_path, "group file with action and category")->required();
  quotient->add_option("--compare-to", compare_path, "category to test isomorphism against");
  quotient->add_option("--cleave-random", cleave_samples, "cleaving test on N random modules");

  auto* smash = app.add_subcommand("smash", "smash product of a graded category");
  smash->add_option("--grading", grading_path)->required();
  smash->add_option("--out", out_path, "write the smash category JSON here");

  auto* gradecheck = app.add_subcommand("grade-check", "homogeneity of a grading");
  gradecheck->add_option("--grading", grading_path)->required();

  auto* smashf = app.add_subcommand("smash-functor", "F#G on compatible gradings");
  smashf->add_option("--functor", functor_path)->required();
  smashf->add_option("--grading-a", grading_path)->required();
  smashf->add_option("--grading-b", grading_b_path)->required();

  auto* inducegrading = app.add_subcommand("induce-grading", "grading on the cover of a schurian base");
  inducegrading->add_option("--functor", functor_path)->required();
  inducegrading->add_option("--grading-b", grading_b_path)->required();
  inducegrading->add_option("--out", out_path, "write the induced grading JSON here");

  auto* tower = app.add_subcommand("grading-from-tower", "grading through a schurian Galois cover");
  tower->add_option("--fmap", fmap_path, "quiver map file A -> B")->required();
  tower->add_option("--gmap", gmap_path, "quiver map file B' -> B")->required();
  tower->add_option("--group", group_path, "group file with the action on B'")->required();

  auto* rtable = app.add_subcommand("retraction-table", "the maps E(a,b) with E.F = id");
  rtable->add_option("--functor", functor_path)->required();
  rtable->add_flag("--full", full, "include the matrices");

  auto* squares = app.add_subcommand("squares", "naturality squares of the retraction");
  squares->add_option("--functor", functor_path)->required();

  auto* eps = app.add_subcommand("epsilon", "canonical inclusion X -> F.F_lambda X");
  eps->add_option("--functor", functor_path)->required();
  eps->add_option("--rep", rep_path)->required();

  auto* cleave = app.add_subcommand("cleave", "does the canonical inclusion split");
  cleave->add_option("--functor", functor_path)->required();
  cleave->add_option("--rep", rep_path)->required();

  auto* decomp = app.add_subcommand("decompose", "Krull-Schmidt decomposition");
  decomp->add_option("--rep", rep_path)->required();
  decomp->add_flag("--witnesses", with_witnesses, "include inclusion/projection matrices");

  auto* iso = app.add_subcommand("iso", "are two representations isomorphic");
  iso->add_option("--x", rep_path)->required();
  iso->add_option("--y", rep2_path)->required();

  auto* summand = app.add_subcommand("summand", "is X a direct summand of Y");
  summand->add_option("--x", rep_path)->required();
  summand->add_option("--y", rep2_path)->required();

  auto* corpus = app.add_subcommand("corpus", "run the bundled example suite");
  corpus->add_option("--dir", dir, "corpus directory");
  corpus->add_flag("--json", json_flag, "emit the consolidated JSON document (always on)");

  CLI11_PARSE(app, argc, argv);
  if (*prime_opt) opt.prime = prime_flag;

  try {
    Workspace ws(opt.prime);

    if (*validate) return cmd_validate(ws, file);

    if (*hom) {
      const Representation& x = ws.representation(rep_path);
      const Representation& y = ws.representation(rep2_path);
      std::vector<RepMorphism> basis = hom_space(x, y);
      ojson report;
      report["command"] = "hom";
      report["dim"] = basis.size();
      if (full) {
        ojson arr = ojson::array();
        for (const RepMorphism& u : basis) {
          ojson comps = ojson::array();
          for (const Mat& m : u.components) comps.push_back(mat_to_json(m));
          arr.push_back(std::move(comps));
        }
        report["basis"] = std::move(arr);
      }
      return emit(report, true, "dim Hom = " + std::to_string(basis.size()));
    }

    if (*covering) {
      const LinearFunctor& f = ws.functor(functor_path);
      CoveringOutcome out = check_covering(f);
      ojson report;
      report["command"] = "check-covering";
      report["covering"] = out.ok();
      if (!out.ok()) {
        report["witness"] = out.witness;
        return emit(report, false, "not a covering: " + out.witness);
      }
      ojson fibers;
      for (std::size_t j = 0; j < f.target().object_count(); ++j) {
        ojson fiber = ojson::array();
        for (std::size_t a : out.certificate->fiber(j)) fiber.push_back(f.source().object_name(a));
        fibers[f.target().object_name(j)] = std::move(fiber);
      }
      report["fibers"] = std::move(fibers);
      OrderOutcome ord = covering_order(*out.certificate);
      if (ord.base_connected && ord.fibers_constant) report["order"] = ord.order;
      if (full) {
        ojson mats;
        for (std::size_t a = 0; a < f.source().object_count(); ++a)
          for (std::size_t j = 0; j < f.target().object_count(); ++j)
            mats["out(" + f.source().object_name(a) + "," + f.target().object_name(j) + ")"] =
                mat_to_json(out.certificate->out_matrix(a, j));
        report["matrices"] = std::move(mats);
      }
      return emit(report, true, "covering");
    }

    if (*balanced) {
      const LinearFunctor& f = ws.functor(functor_path);
      CoveringCertificate cert = need_certificate(f);
      BalancedOutcome out = check_balanced(cert);
      ojson report;
      report["command"] = "check-balanced";
      report["balanced"] = out.balanced;
      if (!out.balanced) report["witness"] = out.witness_label;
      return emit(report, out.balanced,
                  out.balanced ? "balanced" : "not balanced, witness " + out.witness_label);
    }

    if (*order) {
      const LinearFunctor& f = ws.functor(functor_path);
      CoveringCertificate cert = need_certificate(f);
      OrderOutcome out = covering_order(cert);
      ojson report;
      report["command"] = "order";
      report["base_connected"] = out.base_connected;
      report["fiber_sizes"] = out.fiber_sizes;
      if (out.base_connected && out.fibers_constant) {
        report["order"] = out.order;
        report["order_times_objects_is_source_count"] = out.bookkeeping_ok;
        return emit(report, out.bookkeeping_ok, "order " + std::to_string(out.order));
      }
      return emit(report, false, "order undefined: base disconnected or fibers vary");
    }

    if (*lift) {
      const LinearFunctor& f = ws.functor(functor_path);
      const auto* tb = dynamic_cast<const BoundCategory*>(&f.target());
      if (!tb) throw Error("lift: target category must be presented");
      CoveringCertificate cert = need_certificate(f);
      Morphism m = parse_morphism(*tb, morphism_text);
      std::size_t anchor_id = f.source().object_id(anchor);
      LiftFamily fam = cert.lift(m, anchor_id,
                                 direction == "out" ? LiftDirection::Out : LiftDirection::In);
      ojson report;
      report["command"] = "lift";
      report["direction"] = direction;
      report["anchor"] = anchor;
      ojson comps;
      for (const auto& [obj, coords] : fam.components) {
        std::size_t from = direction == "out" ? anchor_id : obj;
        std::size_t to = direction == "out" ? obj : anchor_id;
        comps[f.source().object_name(obj)] = combo_json(f.source(), from, to, coords);
      }
      report["components"] = std::move(comps);
      return emit(report, true, "lift computed");
    }

    if (*pushdown || *pushrho) {
      const LinearFunctor& f = ws.functor(functor_path);
      CoveringCertificate cert = need_certificate(f);
      const Representation& x = ws.representation(rep_path);
      Transported down = *pushdown ? push_down(cert, x) : push_down_right(cert, x);
      ojson report;
      report["command"] = *pushdown ? "push-down" : "push-rho";
      report["rep"] = rep_summary(*down.rep);
      std::string text = representation_to_json(*down.rep, ws.functor_refs(functor_path).target);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << text << "\n";
        report["written"] = out_path;
      } else {
        report["representation"] = ojson::parse(text);
      }
      return emit(report, true, "transported");
    }

    if (*pullup) {
      const LinearFunctor& f = ws.functor(functor_path);
      const Representation& m = ws.representation(rep_path);
      Representation up = pull_up(f, m);
      ojson report;
      report["command"] = "pull-up";
      report["rep"] = rep_summary(up);
      std::string text = representation_to_json(up, ws.functor_refs(functor_path).source);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << text << "\n";
        report["written"] = out_path;
      } else {
        report["representation"] = ojson::parse(text);
      }
      return emit(report, true, "pulled up");
    }

    if (*schurian) {
      const BoundCategory& cat = ws.category(cat_path);
      bool ok = is_schurian(cat);
      ojson report;
      report["command"] = "schurian";
      report["schurian"] = ok;
      return emit(report, ok, ok ? "schurian" : "not schurian");
    }

    if (*quotient) {
      const GroupAction& action = ws.action(group_path);
      Quotient q = galois_quotient(*action.cat, action);
      ojson report;
      report["command"] = "quotient";
      ojson orbits = ojson::array();
      for (const auto& orbit : q.orbits) {
        ojson o = ojson::array();
        for (std::size_t v : orbit) o.push_back(action.cat->object_name(v));
        orbits.push_back(std::move(o));
      }
      report["orbits"] = std::move(orbits);
      CoveringCertificate cert = need_certificate(*q.projection);
      BalancedOutcome bal = check_balanced(cert);
      OrderOutcome ord = covering_order(cert);
      report["covering"] = true;
      report["balanced"] = bal.balanced;
      if (ord.base_connected && ord.fibers_constant) report["order"] = ord.order;
      bool ok = bal.balanced;
      if (!compare_path.empty()) {
        const BoundCategory& b = ws.category(compare_path);
        IsoSearchOutcome iso = find_category_isomorphism(b, *q.cat);
        report["isomorphic_to_compare"] = iso.found;
        ok = ok && iso.found;
        if (iso.found) {
          ojson omap;
          for (std::size_t v = 0; v < b.object_count(); ++v)
            omap[b.object_name(v)] = q.cat->object_name(iso.functor->object_image(v));
          report["iso_object_map"] = std::move(omap);
        }
      }
      if (cleave_samples > 0) {
        ojson cleaves = ojson::array();
        for (std::size_t s = 0; s < cleave_samples; ++s) {
          Representation x = random_representation(*action.cat, opt.seed + s, 6);
          CleaveResult cl = cleaving_test(cert, x, opt.seed + s);
          ojson item;
          item["rep"] = rep_summary(x);
          item["splits"] = cl.splits;
          item["summand_corroborates"] = cl.summand_corroborates;
          cleaves.push_back(std::move(item));
          ok = ok && cl.splits;
        }
        report["cleaving"] = std::move(cleaves);
      }
      return emit(report, ok, ok ? "quotient built, projection balanced" : "quotient: some check failed");
    }

    if (*gradecheck) {
      const Grading& g = ws.grading(grading_path);
      GradingReport gr = check_grading(g);
      ojson report;
      report["command"] = "grade-check";
      report["homogeneous"] = gr.ok;
      if (!gr.ok) report["witness"] = gr.witness;
      return emit(report, gr.ok, gr.ok ? "homogeneous" : gr.witness);
    }

    if (*smash) {
      const Grading& g = ws.grading(grading_path);
      SmashCategory sm = smash_product(*g.cat, g);
      ojson report;
      report["command"] = "smash";
      report["objects"] = sm.cat->object_count();
      report["hom_dims_match_components"] = sm.hom_dims_match_components;
      report["action_free"] = check_action(*sm.action).ok;
      report["schurian"] = is_schurian(*sm.cat);
      Quotient q = galois_quotient(*sm.cat, *sm.action);
      ComparisonOutcome cmp = smash_quotient_comparison(*g.cat, sm, q);
      report["quotient_isomorphic_to_base"] = cmp.isomorphism;
      std::string text = category_to_json(*sm.cat);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << text << "\n";
        report["written"] = out_path;
      }
      bool ok = sm.hom_dims_match_components && cmp.isomorphism;
      return emit(report, ok, ok ? "smash product built" : "smash: verification failed");
    }

    if (*smashf) {
      const LinearFunctor& f = ws.functor(functor_path);
      const Grading& ga = ws.grading(grading_path);
      const Grading& gb = ws.grading(grading_b_path);
      SmashCategory sa = smash_product(*ga.cat, ga);
      SmashCategory sb = smash_product(*gb.cat, gb);
      SmashFunctorOutcome out = smash_functor(f, ga, gb, sa, sb);
      ojson report;
      report["command"] = "smash-functor";
      report["compatible"] = out.compatible;
      report["square_commutes"] = out.square_commutes;
      if (!out.witness.empty()) report["witness"] = out.witness;
      bool ok = out.compatible && out.square_commutes && out.functor.has_value();
      if (ok) {
        CoveringOutcome cov = check_covering(*out.functor);
        report["covering"] = cov.ok();
        if (cov.ok()) {
          bool smash_bal = check_balanced(*cov.certificate).balanced;
          report["balanced"] = smash_bal;
          CoveringCertificate base = need_certificate(f);
          bool f_bal = check_balanced(base).balanced;
          report["base_balanced"] = f_bal;
          report["balanced_iff_base_balanced"] = smash_bal == f_bal;
          ok = cov.ok() && smash_bal == f_bal;
        } else {
          ok = false;
        }
      }
      return emit(report, ok, ok ? "F#G verified" : "smash-functor: " + out.witness);
    }

    if (*inducegrading) {
      const LinearFunctor& f = ws.functor(functor_path);
      const Grading& gb = ws.grading(grading_b_path);
      CoveringCertificate cert = need_certificate(f);
      InducedGradingOutcome out = induce_grading_schurian(cert, gb);
      ojson report;
      report["command"] = "induce-grading";
      report["induced"] = out.grading.has_value();
      report["compatible"] = out.compatible;
      if (!out.witness.empty()) report["witness"] = out.witness;
      if (out.grading) {
        ojson degs;
        for (std::uint32_t a = 0; a < f.source().quiver().arrow_count(); ++a)
          degs[f.source().quiver().arrow(a).name] = gb.group->name(out.grading->degree[a]);
        report["degrees"] = degs;
        if (!out_path.empty()) {
          std::ofstream outf(out_path);
          outf << grading_to_json(*out.grading, ws.functor_refs(functor_path).source, "") << "\n";
          report["written"] = out_path;
        }
      }
      bool ok = out.grading.has_value() && out.compatible;
      return emit(report, ok, ok ? "grading induced" : "induce-grading: " + out.witness);
    }

    if (*tower) {
      const auto& fmap = ws.quiver_map(fmap_path);
      const auto& gmap = ws.quiver_map(gmap_path);
      const GroupAction& action = ws.action(group_path);
      if (gmap.source != action.cat)
        throw Error("grading-from-tower: the action must live on the source of --gmap");
      if (fmap.target != gmap.target)
        throw Error("grading-from-tower: the two quiver maps must share their target");
      TowerOutcome out = grading_from_schurian_galois(*fmap.source, *fmap.target, *gmap.source,
                                                      fmap.map, gmap.map, action);
      ojson report;
      report["command"] = "grading-from-tower";
      report["ok"] = out.grading_a.has_value() && out.square_commutes;
      if (!out.witness.empty()) report["witness"] = out.witness;
      if (out.grading_a) {
        ojson degs;
        for (std::uint32_t a = 0; a < fmap.source->quiver().arrow_count(); ++a)
          degs[fmap.source->quiver().arrow(a).name] =
              action.group->name(out.grading_a->degree[a]);
        report["degrees_a"] = std::move(degs);
        ojson degs_b;
        for (std::uint32_t a = 0; a < fmap.target->quiver().arrow_count(); ++a)
          degs_b[fmap.target->quiver().arrow(a).name] =
              action.group->name(out.grading_b->degree[a]);
        report["degrees_b"] = std::move(degs_b);
        report["square_commutes"] = out.square_commutes;
        report["representatives"] = out.representative_note;
      }
      bool ok = out.grading_a.has_value() && out.square_commutes;
      return emit(report, ok, ok ? "tower grading built" : "grading-from-tower: " + out.witness);
    }

    if (*rtable) {
      const LinearFunctor& f = ws.functor(functor_path);
      CoveringCertificate cert = need_certificate(f);
      RetractionTable table = retraction_table(cert);
      ojson report;
      report["command"] = "retraction-table";
      report["retraction_of_F"] = table.retraction_of_f;
      if (full) {
        ojson mats;
        for (std::size_t a = 0; a < f.source().object_count(); ++a)
          for (std::size_t b = 0; b < f.source().object_count(); ++b)
            mats["E(" + f.source().object_name(a) + "," + f.source().object_name(b) + ")"] =
                mat_to_json(table.at(a, b));
        report["maps"] = std::move(mats);
      }
      return emit(report, table.retraction_of_f,
                  table.retraction_of_f ? "E . F = id on every pair" : "E . F failed");
    }

    if (*squares) {
      const LinearFunctor& f = ws.functor(functor_path);
      CoveringCertificate cert = need_certificate(f);
      RetractionTable table = retraction_table(cert);
      SquaresReport sq = check_naturality_squares(table);
      BalancedOutcome bal = check_balanced(cert);
      ojson report;
      report["command"] = "squares";
      report["square1"] = sq.square1;
      report["square2"] = sq.square2;
      report["balanced"] = bal.balanced;
      report["square2_iff_balanced"] = sq.square2 == bal.balanced;
      if (!sq.witness1.empty()) report["witness1"] = sq.witness1;
      if (!sq.witness2.empty()) report["witness2"] = sq.witness2;
      bool ok = sq.square1 && sq.square2;
      return emit(report, ok,
                  ok ? "both squares commute" : "square failure: " + sq.witness1 + sq.witness2);
    }

    if (*eps) {
      const LinearFunctor& f = ws.functor(functor_path);
      CoveringCertificate cert = need_certificate(f);
      const Representation& x = ws.representation(rep_path);
      EpsilonResult out = epsilon(cert, x);
      ojson report;
      report["command"] = "epsilon";
      report["big"] = rep_summary(*out.big);
      ojson comps;
      for (std::size_t a = 0; a < f.source().object_count(); ++a)
        comps[f.source().object_name(a)] = mat_to_json(out.eps.components[a]);
      report["components"] = std::move(comps);
      report["module_morphism"] = true;  // construction throws otherwise
      return emit(report, true, "epsilon built");
    }

    if (*cleave) {
      const LinearFunctor& f = ws.functor(functor_path);
      CoveringCertificate cert = need_certificate(f);
      const Representation& x = ws.representation(rep_path);
      CleaveResult out = cleaving_test(cert, x, opt.seed);
      ojson report;
      report["command"] = "cleave";
      report["splits"] = out.splits;
      report["rep"] = rep_summary(x);
      report["big"] = rep_summary(*out.embedding.big);
      report["summand_corroborates"] = out.summand_corroborates;
      if (out.retraction) {
        ojson comps;
        for (std::size_t a = 0; a < f.source().object_count(); ++a)
          comps[f.source().object_name(a)] = mat_to_json(out.retraction->components[a]);
        report["retraction"] = std::move(comps);
      }
      return emit(report, out.splits, out.splits ? "splits" : "does not split");
    }

    if (*decomp) {
      const Representation& x = ws.representation(rep_path);
      Decomposition d = decompose(x, opt.seed);
      ojson report;
      report["command"] = "decompose";
      report["seed"] = opt.seed;
      ojson classes = ojson::array();
      for (std::size_t c = 0; c < d.class_count(); ++c) {
        const Summand& s = d.summands[d.class_reps[c]];
        ojson item;
        item["multiplicity"] = d.multiplicities[c];
        item["rep"] = rep_summary(*s.rep);
        ojson cert;
        cert["end_dim"] = s.certificate.end_dim;
        cert["radical_dim"] = s.certificate.radical_dim;
        cert["quotient_dim"] = s.certificate.quotient_dim;
        cert["quotient_commutative"] = s.certificate.quotient_commutative;
        item["certificate"] = std::move(cert);
        classes.push_back(std::move(item));
      }
      report["classes"] = std::move(classes);
      if (with_witnesses) {
        ojson ws_arr = ojson::array();
        for (const Summand& s : d.summands) {
          ojson item;
          ojson inc = ojson::array(), proj = ojson::array();
          for (const Mat& m : s.inclusion.components) inc.push_back(mat_to_json(m));
          for (const Mat& m : s.projection.components) proj.push_back(mat_to_json(m));
          item["inclusion"] = std::move(inc);
          item["projection"] = std::move(proj);
          ws_arr.push_back(std::move(item));
        }
        report["witnesses"] = std::move(ws_arr);
      }
      return emit(report, true, std::to_string(d.summands.size()) + " summands in " +
                                    std::to_string(d.class_count()) + " classes");
    }

    if (*iso) {
      const Representation& x = ws.representation(rep_path);
      const Representation& y = ws.representation(rep2_path);
      IsoOutcome out = are_isomorphic(x, y, opt.seed);
      ojson report;
      report["command"] = "iso";
      report["isomorphic"] = out.isomorphic;
      return emit(report, out.isomorphic, out.isomorphic ? "isomorphic" : "not isomorphic");
    }

    if (*summand) {
      const Representation& x = ws.representation(rep_path);
      const Representation& y = ws.representation(rep2_path);
      SummandOutcome out = is_direct_summand(x, y, opt.seed);
      ojson report;
      report["command"] = "summand";
      report["summand"] = out.summand;
      if (out.split) {
        ojson u = ojson::array(), r = ojson::array();
        for (const Mat& m : out.split->first.components) u.push_back(mat_to_json(m));
        for (const Mat& m : out.split->second.components) r.push_back(mat_to_json(m));
        report["section"] = std::move(u);
        report["retraction"] = std::move(r);
      }
      return emit(report, out.summand, out.summand ? "summand" : "not a summand");
    }

    if (*corpus) {
      (void)json_flag;
      return cmd_corpus(dir, opt.seed);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
