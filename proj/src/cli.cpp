#include "hsig/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <new>

#include <CLI11.hpp>

#include "hsig/experiment.hpp"
#include "hsig/fixtures.hpp"
#include "hsig/tree_io.hpp"

namespace hsig {

using nlohmann::json;

nlohmann::json tensor_to_json(const TensorR<double>& t, bool with_words) {
  const auto& b = *t.basis();
  json sizes = json::array();
  for (int k = 0; k <= b.max_degree(); ++k) sizes.push_back(b.degree_count(k));
  json j;
  j["format"] = "hsig-tensor";
  j["version"] = 1;
  j["basis"] = {{"rank", b.rank()},
                {"dim", b.dim()},
                {"max_degree", b.max_degree()},
                {"ordering", "degree-major, lexicographic in generator ids; generator 0 is time"},
                {"degree_sizes", sizes}};
  j["coefficients"] = t.coeffs();
  if (with_words) {
    json words = json::array();
    for (std::size_t i = 0; i < b.size(); ++i) words.push_back(b.label(i));
    j["words"] = words;
  }
  return j;
}

nlohmann::json phi_to_json(const PhiResult& r, bool with_words) {
  json j = tensor_to_json(r.value, with_words);
  j["metadata"] = {{"phi_rank", r.rank},
                   {"max_degree", r.max_degree},
                   {"provenance", to_string(r.provenance)},
                   {"elapsed_ms", r.elapsed_ms},
                   {"node_visits", r.node_visits},
                   {"peak_stack_depth", r.peak_stack_depth}};
  return j;
}

nlohmann::json distance_to_json(const DistanceReport& r) {
  return {{"rank", r.rank},
          {"max_degree", r.max_degree},
          {"normalized", r.normalized},
          {"norm", to_string(r.norm)},
          {"value", r.value},
          {"per_degree", r.per_degree}};
}

namespace {

Tree load_validated(const std::string& path) { return validated(load_tree_file(path)).tree; }

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << j.dump(2) << '\n';
}

struct PhiArgs {
  std::string input;
  int rank = 0;
  int trunc = 2;
  bool normalize = false;
  bool oracle = false;
  bool words = false;
};

int cmd_phi(const PhiArgs& a, std::ostream& out) {
  Tree tree = load_validated(a.input);
  PhiOptions opts;
  opts.normalization = a.normalize ? Normalization::robust : Normalization::none;
  PhiResult r = phi_r(tree, a.rank, a.trunc, opts);
  json j = phi_to_json(r, a.words);
  j["metadata"]["input"] = a.input;
  j["metadata"]["normalization"] = a.normalize ? "robust" : "none";
  if (a.oracle) {
    PhiResult b = brute_force_phi(tree, a.rank, a.trunc, opts);
    j["oracle"] = {{"provenance", to_string(b.provenance)},
                   {"max_abs_deviation", max_abs_diff(r.value, b.value)},
                   {"elapsed_ms", b.elapsed_ms}};
  }
  out << j.dump(2) << '\n';
  return 0;
}

struct DistArgs {
  std::string a, b;
  int rank = 0;
  int trunc = 2;
  bool normalize = false;
  std::string norm = "hilbert";
};

int cmd_dist(const DistArgs& a, std::ostream& out) {
  Tree x = load_validated(a.a);
  Tree y = load_validated(a.b);
  DistanceConfig cfg;
  cfg.normalization = a.normalize ? Normalization::robust : Normalization::none;
  cfg.norm = parse_norm_mode(a.norm);
  json j = distance_to_json(d_r(x, y, a.rank, a.trunc, cfg));
  j["a"] = a.a;
  j["b"] = a.b;
  out << j.dump(2) << '\n';
  return 0;
}

struct DimsArgs {
  int rank = 1;
  int dim = 1;
  int max_degree = 3;
  double enumerate_limit = 2e7;
};

int cmd_dims(const DimsArgs& a, std::ostream& out) {
  if (a.rank < 1 || a.dim < 1 || a.max_degree < 0)
    throw ConfigError("dims needs rank >= 1, dim >= 1 and max-degree >= 0");
  // The basis also builds its product table, so enumeration is skipped when
  // that table would be too large; the column is then left empty.
  BasisPtr basis;
  if (estimate_product_terms(a.rank, a.dim, a.max_degree) <= BigInt(static_cast<long long>(a.enumerate_limit)))
    basis = basis_enumerate(a.rank, a.dim, a.max_degree);
  out << "degree,dimension,enumerated,cumulative\n";
  BigInt cum = 0;
  for (int k = 0; k <= a.max_degree; ++k) {
    const BigInt dk = dim_graded(a.rank, a.dim, k);
    cum += dk;
    out << k << ',' << dk << ',';
    if (basis) out << basis->degree_count(k);
    out << ',' << cum << '\n';
  }
  return 0;
}

int cmd_experiment(const ExperimentConfig& cfg, const std::string& output, std::ostream& out) {
  const auto rows = run_experiment(cfg);
  std::ofstream file;
  std::ostream* os = &out;
  if (!output.empty()) {
    file.open(output);
    if (!file) throw ConfigError("cannot write '" + output + "'");
    os = &file;
  }
  *os << "m,accuracy_phi0,accuracy_phi1\n";
  for (const auto& r : rows)
    *os << r.m << ',' << format_double(r.accuracy_phi0) << ',' << format_double(r.accuracy_phi1) << '\n';
  return 0;
}

struct FixtureArgs {
  std::string which;
  int n = 1;
  std::string out_dir = ".";
};

int cmd_fixtures(const FixtureArgs& a, std::ostream& out) {
  const std::filesystem::path dir(a.out_dir);
  std::filesystem::create_directories(dir);
  std::vector<std::pair<std::string, ExactTree>> files;
  if (a.which == "appendix-a") {
    files.emplace_back("appendix-a-x.json", moment_pair_x());
    files.emplace_back("appendix-a-y.json", moment_pair_y());
  } else if (a.which == "figure-1") {
    if (a.n < 1) throw ConfigError("figure-1 needs --n >= 1");
    files.emplace_back("figure-1-left-n" + std::to_string(a.n) + ".json", gap_process(a.n));
    files.emplace_back("figure-1-right.json", gap_limit());
  } else {
    throw ConfigError("unknown fixture '" + a.which + "' (expected appendix-a or figure-1)");
  }
  for (const auto& [name, tree] : files) {
    write_json_file(dir / name, tree_to_json(tree));
    out << (dir / name).string() << '\n';
  }
  return 0;
}

void print_diagnostics(const ValidationError& e, std::ostream& err) {
  err << "hsig: validation failed\n";
  for (const auto& d : e.diagnostics()) err << "  " << d.where << ": " << d.message << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher-rank expected signatures of filtration trees", "hsig"};
  app.require_subcommand(1);

  PhiArgs phi;
  auto* sphi = app.add_subcommand("phi", "Phi_r of a tree file as a JSON tensor");
  sphi->add_option("--input", phi.input, "tree JSON file")->required();
  sphi->add_option("--rank", phi.rank, "rank r of Phi_r")->check(CLI::NonNegativeNumber);
  sphi->add_option("--trunc", phi.trunc, "truncation degree")->check(CLI::NonNegativeNumber);
  sphi->add_flag("--normalize", phi.normalize, "robust normalization at every rank");
  sphi->add_flag("--oracle", phi.oracle, "also run the brute-force oracle");
  sphi->add_flag("--words", phi.words, "emit basis word labels");

  DistArgs dist;
  auto* sdist = app.add_subcommand("dist", "d_r between two tree files");
  sdist->add_option("--a", dist.a, "first tree")->required();
  sdist->add_option("--b", dist.b, "second tree")->required();
  sdist->add_option("--rank", dist.rank)->check(CLI::NonNegativeNumber);
  sdist->add_option("--trunc", dist.trunc)->check(CLI::NonNegativeNumber);
  sdist->add_flag("--normalize", dist.normalize);
  sdist->add_option("--norm", dist.norm, "hilbert or level_l1");

  DimsArgs dims;
  auto* sdims = app.add_subcommand("dims", "graded dimensions as CSV");
  sdims->add_option("--rank", dims.rank);
  sdims->add_option("--dim", dims.dim);
  sdims->add_option("--max-degree", dims.max_degree);
  sdims->add_option("--enumerate-limit", dims.enumerate_limit,
                    "skip enumeration above this many product terms");

  ExperimentConfig ecfg;
  std::string eout;
  auto* sexp = app.add_subcommand("experiment", "mixture classification experiment as CSV");
  sexp->add_option("--epsilon", ecfg.epsilon);
  sexp->add_option("--n-samples", ecfg.n_samples);
  sexp->add_option("--n-train", ecfg.n_train);
  sexp->add_option("--n-test", ecfg.n_test);
  sexp->add_option("--trunc-phi0", ecfg.trunc_phi0);
  sexp->add_option("--trunc-phi1", ecfg.trunc_phi1);
  sexp->add_option("--seed", ecfg.seed);
  sexp->add_option("--epochs", ecfg.epochs);
  sexp->add_option("--lambda", ecfg.lambda);
  sexp->add_option("--m-min", ecfg.m_min);
  sexp->add_option("--m-max", ecfg.m_max);
  sexp->add_option("--m-step", ecfg.m_step);
  sexp->add_option("--c-atoms", ecfg.c_atoms, "draws of C per sampled process");
  sexp->add_option("--output", eout, "CSV file (default stdout)");

  FixtureArgs fix;
  auto* sfix = app.add_subcommand("fixtures", "write built-in fixture trees");
  sfix->add_option("which", fix.which, "appendix-a or figure-1")->required();
  sfix->add_option("--n", fix.n, "figure-1 gap parameter");
  sfix->add_option("--out-dir", fix.out_dir);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hsig: " << e.what() << '\n';
    return static_cast<int>(ExitCode::usage);
  }

  try {
    if (sphi->parsed()) {
      if (sphi->count("--trunc") == 0) throw ConfigError("phi needs --trunc");
      return cmd_phi(phi, out);
    }
    if (sdist->parsed()) {
      if (sdist->count("--trunc") == 0) throw ConfigError("dist needs --trunc");
      return cmd_dist(dist, out);
    }
    if (sdims->parsed()) return cmd_dims(dims, out);
    if (sexp->parsed()) {
      // A smaller sample keeps the even split unless the split is given.
      if (sexp->count("--n-samples") && !sexp->count("--n-train") && !sexp->count("--n-test")) {
        ecfg.n_train = ecfg.n_samples / 2;
        ecfg.n_test = ecfg.n_samples - ecfg.n_train;
        if (!sexp->count("--m-max")) ecfg.m_max = ecfg.n_train;
        ecfg.m_min = std::min(ecfg.m_min, std::max(ecfg.n_train, 1));
      }
      return cmd_experiment(ecfg, eout, out);
    }
    if (sfix->parsed()) return cmd_fixtures(fix, out);
  } catch (const ValidationError& e) {
    print_diagnostics(e, err);
    return static_cast<int>(e.exit_code());
  } catch (const Error& e) {
    err << "hsig: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::bad_alloc&) {
    err << "hsig: out of memory\n";
    return static_cast<int>(ExitCode::resource);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "hsig: " << e.what() << '\n';
    return static_cast<int>(ExitCode::usage);
  }
  return static_cast<int>(ExitCode::usage);
}

}  // namespace hsig
