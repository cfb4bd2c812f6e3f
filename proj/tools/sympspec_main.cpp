#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sympspec/inequalities.hpp"
#include "sympspec/majorization.hpp"
#include "sympspec/matrix_io.hpp"
#include "sympspec/numeric.hpp"
#include "sympspec/symplectic.hpp"
#include "sympspec/williamson.hpp"

namespace {

using nlohmann::json;
using namespace sympspec;

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ToleranceConfig& tol) {
  return {{"rel", tol.rel},
          {"abs", tol.abs},
          {"cluster", tol.cluster},
          {"rank_cut", tol.rank_cut},
          {"cond_max", tol.cond_max}};
}

json base_report(const std::string& command, const ToleranceConfig& tol) {
  return {{"command", command}, {"version", kVersion}, {"tolerances", to_json(tol)}};
}

void emit(const json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text_atomic(out_path, text);
}

// 2 for input/usage problems, 3 for numerical failures.
int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::parse_error:
    case Errc::index_out_of_range:
    case Errc::length_mismatch:
    case Errc::shape_mismatch:
    case Errc::odd_dimension:
      return 2;
    default:
      return 3;
  }
}

void report_error(const Error& e) {
  json doc = {{"error", errc_name(e.code())}, {"message", e.what()}};
  std::cerr << doc.dump() << std::endl;
}

struct CommonOptions {
  ToleranceConfig tol;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--rel-tol", opts.tol.rel, "relative residual tolerance");
  cmd->add_option("--abs-tol", opts.tol.abs, "absolute tolerance floor");
  cmd->add_option("--cluster-tol", opts.tol.cluster, "eigenvalue clustering tolerance");
  cmd->add_option("--rank-tol", opts.tol.rank_cut, "rank decision cutoff");
  cmd->add_option("--cond-max", opts.tol.cond_max, "condition number ceiling");
  cmd->add_option("-o,--output", opts.out, "output file (default: stdout)");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SYMPSPEC_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 1;
}

json pair_to_json(const Matrix& a, const Matrix& b, const Matrix& sum, const EigenPair& p,
                  double da, double db, double dsum) {
  const EigenPair pa{p.u, p.v, da};
  const EigenPair pb{p.u, p.v, db};
  const EigenPair ps{p.u, p.v, dsum};
  return {{"u", p.u},
          {"v", p.v},
          {"d_a", da},
          {"d_b", db},
          {"d_sum", dsum},
          {"residual_a", pair_residual(a, pa)},
          {"residual_b", pair_residual(b, pb)},
          {"residual_sum", pair_residual(sum, ps)}};
}

int run_williamson(const std::string& path, const CommonOptions& opts) {
  Matrix a = read_matrix(path);
  SymplecticSpectrum spec = williamson(a, opts.tol);
  json doc = base_report("williamson", opts.tol);
  doc["d"] = spec.d;
  doc["m"] = to_json(spec.m);
  doc["diag_residual"] = spec.diag_residual;
  doc["symp_residual"] = spec.symp_residual;
  emit(doc, opts.out);
  return 0;
}

int run_weyl(const std::string& a_path, const std::string& b_path, std::size_t i, std::size_t j,
             bool want_witness, const CommonOptions& opts) {
  Matrix a = read_matrix(a_path);
  Matrix b = read_matrix(b_path);
  WeylReport report = weyl_check(a, b, i, j, opts.tol);
  json doc = base_report("weyl", opts.tol);
  doc["i"] = i;
  doc["j"] = j;
  doc["lhs"] = report.lhs;
  doc["rhs"] = report.rhs;
  doc["slack"] = report.slack;
  doc["inequality_ok"] = report.inequality_ok;
  bool witness_found = false;
  if (want_witness) {
    std::optional<EigenPair> w = weyl_equality_witness(a, b, i, j, opts.tol);
    witness_found = w.has_value();
    doc["witness_present"] = witness_found;
    if (w) {
      SymplecticSpectrum wa = williamson(a, opts.tol);
      SymplecticSpectrum wb = williamson(b, opts.tol);
      doc["witness"] =
          pair_to_json(a, b, a + b, *w, wa.d[i - 1], wb.d[j - 1], w->d);
    }
  }
  emit(doc, opts.out);
  if (!report.inequality_ok) return 1;
  if (want_witness && !witness_found) return 1;
  return 0;
}

int run_lidskii(const std::string& a_path, const std::string& b_path,
                const std::vector<std::size_t>& indices, std::size_t grid, double trace_at,
                bool have_trace_at, const CommonOptions& opts) {
  Matrix a = read_matrix(a_path);
  Matrix b = read_matrix(b_path);
  LidskiiReport report = lidskii_equality_test(a, b, indices, grid, opts.tol);
  json doc = base_report("lidskii", opts.tol);
  doc["indices"] = indices;
  doc["lhs"] = report.lhs;
  doc["rhs"] = report.rhs;
  doc["slack"] = report.slack;
  doc["inequality_ok"] = report.inequality_ok;
  doc["linearity_residual"] = *report.linearity_residual;
  doc["equality"] = *report.equality;
  doc["consistent"] = report.consistent;
  doc["grid_t"] = report.grid_t;
  doc["grid_phi"] = report.grid_phi;
  doc["degenerate_points"] = report.degenerate_points;
  if (have_trace_at) {
    TraceConditionReport trace = lidskii_trace_conditions(a, b, indices, trace_at, opts.tol);
    doc["trace"] = {{"t", trace_at},
                    {"trace_a", trace.trace_a},
                    {"trace_b", trace.trace_b},
                    {"residual_a", trace.residual_a},
                    {"residual_b", trace.residual_b},
                    {"degenerate", trace.degenerate}};
  }
  emit(doc, opts.out);
  return 0;
}

int run_curve(const std::string& a_path, const std::string& b_path,
              const std::vector<std::size_t>& indices, std::size_t grid,
              const CommonOptions& opts) {
  Matrix a = read_matrix(a_path);
  Matrix b = read_matrix(b_path);
  if (grid < 2) fail(Errc::index_out_of_range, "grid must have at least 2 points");
  Vec ts(grid);
  for (std::size_t g = 0; g < grid; ++g)
    ts[g] = static_cast<double>(g) / static_cast<double>(grid - 1);
  CurveTable table = curve(a, b, indices, ts, opts.tol);

  std::string csv = "t";
  for (std::size_t idx : table.indices) csv += ",d_" + std::to_string(idx);
  csv += ",sum\n";
  for (std::size_t g = 0; g < table.t.size(); ++g) {
    csv += format_double(table.t[g]);
    for (std::size_t j = 0; j < table.indices.size(); ++j)
      csv += "," + format_double(table.values(g, j));
    csv += "," + format_double(table.sum[g]) + "\n";
  }
  if (opts.out.empty())
    std::cout << csv;
  else
    write_text_atomic(opts.out, csv);
  return 0;
}

int run_schur_horn_check(const std::string& path, const CommonOptions& opts) {
  Matrix a = read_matrix(path);
  DiagonalVectors vectors = diagonal_vectors(a, opts.tol);
  MajorizationReport report = schur_horn_weak_check(a, opts.tol);

  json doc = base_report("schur-horn", opts.tol);
  doc["mode"] = "check";
  doc["mean_diag"] = vectors.mean;
  doc["d"] = vectors.spectrum;
  doc["relation"] = relation_name(report.relation);
  doc["prefix_slacks"] = report.prefix_slacks;
  doc["total_gap"] = report.total_gap;
  json variants;
  for (auto [name, vec] : {std::pair<const char*, const Vec*>{"geometric", &vectors.geometric},
                           {"quadratic", &vectors.quadratic},
                           {"quadratic_coupled", &vectors.quadratic_coupled}}) {
    MajorizationReport r = compare(*vec, vectors.spectrum, opts.tol);
    variants[name] = {{"vector", *vec}, {"relation", relation_name(r.relation)}};
  }
  doc["variants"] = variants;

  std::optional<OrthosymplecticWilliamson> sat = orthosymplectic_williamson(a, opts.tol);
  json saturation = {{"witness_present", sat.has_value()}};
  if (sat) {
    saturation["n"] = to_json(sat->n);
    saturation["recon_residual"] = sat->recon_residual;
  }
  doc["saturation"] = saturation;
  emit(doc, opts.out);
  return 0;
}

int run_schur_horn_construct(const std::string& x_path, const std::string& y_path,
                             const CommonOptions& opts) {
  Vec x = read_vector(x_path);
  Vec y = read_vector(y_path);
  SchurHornConstruction built;
  try {
    built = schur_horn_construct(x, y, opts.tol);
  } catch (const Error& e) {
    if (e.code() == Errc::not_weakly_supermajorized) {
      report_error(e);
      return 1;
    }
    throw;
  }
  json doc = base_report("schur-horn", opts.tol);
  doc["mode"] = "construct";
  doc["x"] = x;
  doc["y"] = y;
  doc["mean_residual"] = built.mean_residual;
  doc["spectrum_residual"] = built.spectrum_residual;
  if (opts.out.empty()) {
    doc["a"] = to_json(built.a);
    emit(doc, "");
  } else {
    write_matrix(opts.out, built.a, "constructed by sympspec schur-horn");
    doc["output"] = opts.out;
    emit(doc, "");
  }
  return 0;
}

int run_random(const std::string& kind, std::size_t n, std::uint64_t seed, double cond,
               double spread, const CommonOptions& opts) {
  Matrix m;
  if (kind == "spd")
    m = random_spd(2 * n, seed, cond);
  else if (kind == "symplectic")
    m = random_symplectic(n, seed, spread);
  else if (kind == "orthosymplectic")
    m = random_orthosymplectic(n, seed);
  else
    fail(Errc::parse_error, "kind must be spd, symplectic, or orthosymplectic");
  const std::string comment =
      kind + " n=" + std::to_string(n) + " seed=" + std::to_string(seed);
  if (opts.out.empty())
    std::cout << format_matrix(m, comment);
  else
    write_matrix(opts.out, m, comment);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Williamson decompositions, symplectic eigenvalue inequalities, and the symplectic Schur-Horn construction"};
  app.require_subcommand(1);

  CommonOptions opts;

  auto* cmd_williamson = app.add_subcommand("williamson", "symplectic spectrum of an SPD matrix");
  std::string w_path;
  cmd_williamson->add_option("matrix", w_path, "matrix file")->required();
  add_common(cmd_williamson, opts);

  auto* cmd_weyl = app.add_subcommand("weyl", "Weyl inequality check and equality witness");
  std::string weyl_a, weyl_b;
  std::size_t weyl_i = 1, weyl_j = 1;
  bool weyl_witness = false;
  cmd_weyl->add_option("a", weyl_a, "first matrix file")->required();
  cmd_weyl->add_option("b", weyl_b, "second matrix file")->required();
  cmd_weyl->add_option("--i", weyl_i, "index into d(A)")->required();
  cmd_weyl->add_option("--j", weyl_j, "index into d(B)")->required();
  cmd_weyl->add_flag("--witness", weyl_witness, "search for a common eigenvector pair");
  add_common(cmd_weyl, opts);

  auto* cmd_lidskii = app.add_subcommand("lidskii", "Lidskii inequality and equality tests");
  std::string lid_a, lid_b;
  std::vector<std::size_t> lid_indices;
  std::size_t lid_grid = 21;
  double lid_trace_at = 0.5;
  cmd_lidskii->add_option("a", lid_a, "first matrix file")->required();
  cmd_lidskii->add_option("b", lid_b, "second matrix file")->required();
  cmd_lidskii->add_option("--indices", lid_indices, "ascending 1-based indices")
      ->required()
      ->delimiter(',');
  cmd_lidskii->add_option("--grid", lid_grid, "grid size for the linearity test");
  auto* trace_opt =
      cmd_lidskii->add_option("--trace-at", lid_trace_at, "evaluate trace conditions at this t");
  add_common(cmd_lidskii, opts);

  auto* cmd_curve = app.add_subcommand("curve", "sample d_i(A + tB) to CSV");
  std::string curve_a, curve_b;
  std::vector<std::size_t> curve_indices;
  std::size_t curve_grid = 21;
  cmd_curve->add_option("a", curve_a, "first matrix file")->required();
  cmd_curve->add_option("b", curve_b, "second matrix file")->required();
  cmd_curve->add_option("--indices", curve_indices, "ascending 1-based indices")
      ->required()
      ->delimiter(',');
  cmd_curve->add_option("--grid", curve_grid, "number of grid points on [0,1]");
  add_common(cmd_curve, opts);

  auto* cmd_sh = app.add_subcommand("schur-horn", "majorization check or inverse construction");
  std::string sh_matrix;
  std::vector<std::string> sh_construct;
  cmd_sh->add_option("matrix", sh_matrix, "matrix file (check mode)");
  cmd_sh->add_option("--construct", sh_construct, "x and y vector files (construct mode)")
      ->expected(2);
  add_common(cmd_sh, opts);

  auto* cmd_random = app.add_subcommand("random", "seeded matrix generators");
  std::string rand_kind;
  std::size_t rand_n = 1;
  std::uint64_t rand_seed = default_seed();
  double rand_cond = 100.0, rand_spread = 4.0;
  cmd_random->add_option("kind", rand_kind, "spd | symplectic | orthosymplectic")->required();
  cmd_random->add_option("--n", rand_n, "half-dimension n (matrices are 2n x 2n)")->required();
  cmd_random->add_option("--seed", rand_seed, "PRNG seed (default: SYMPSPEC_SEED or 1)");
  cmd_random->add_option("--cond", rand_cond, "condition target for spd");
  cmd_random->add_option("--spread", rand_spread, "stretch range for symplectic");
  add_common(cmd_random, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    opts.tol.validate();
    if (cmd_williamson->parsed()) return run_williamson(w_path, opts);
    if (cmd_weyl->parsed()) return run_weyl(weyl_a, weyl_b, weyl_i, weyl_j, weyl_witness, opts);
    if (cmd_lidskii->parsed())
      return run_lidskii(lid_a, lid_b, lid_indices, lid_grid, lid_trace_at,
                         trace_opt->count() > 0, opts);
    if (cmd_curve->parsed()) return run_curve(curve_a, curve_b, curve_indices, curve_grid, opts);
    if (cmd_sh->parsed()) {
      const bool construct = !sh_construct.empty();
      if (construct == !sh_matrix.empty())
        fail(Errc::parse_error, "give either a matrix file or --construct x y");
      return construct ? run_schur_horn_construct(sh_construct[0], sh_construct[1], opts)
                       : run_schur_horn_check(sh_matrix, opts);
    }
    if (cmd_random->parsed())
      return run_random(rand_kind, rand_n, rand_seed, rand_cond, rand_spread, opts);
  } catch (const Error& e) {
    report_error(e);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << R"({"error":"Internal","message":")" << e.what() << "\"}" << std::endl;
    return 3;
  }
  return 2;
}
