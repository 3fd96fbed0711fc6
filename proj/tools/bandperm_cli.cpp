#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "bandperm/evaluate.hpp"
#include "bandperm/genfun.hpp"
#include "bandperm/json_io.hpp"
#include "bandperm/verify.hpp"

using namespace bandperm;
using exactalg::Poly;
using json_io::json;

namespace {

// Exit codes: 0 ok, 1 verification failure, 2 argument error.
class ArgumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<Poly> parse_weights(const std::string& s) {
  std::vector<Poly> w;
  for (const auto& item : split(s, ',')) w.push_back(Poly::parse(item));
  if (w.empty()) throw ArgumentError("--weights needs at least one entry");
  return w;
}

std::vector<int> parse_set(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split(s, ',')) {
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos) {
      throw ArgumentError("bad set element '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

struct EvalOpts {
  std::string family = "circulant";
  unsigned k = 1, r = 0, n = 1;
  std::string weights;
  std::string method = "transfer";
  bool inverse_var = false;
  bool as_json = false;
};

void add_eval_options(CLI::App* cmd, EvalOpts& o) {
  cmd->add_option("--family", o.family, "toeplitz | circulant | circulant-x")->capture_default_str();
  cmd->add_option("--k", o.k, "block size of J_k")->capture_default_str();
  cmd->add_option("--r", o.r, "index of the lowest band (band -r)")->capture_default_str();
  cmd->add_option("--weights", o.weights, "w_0,...,w_t as names or integers")->required();
  cmd->add_option("--n", o.n, "matrix order before the Kronecker product")->required();
  cmd->add_option("--method", o.method, "transfer | oracle | closed | wv")->capture_default_str();
  cmd->add_flag("--inverse-var", o.inverse_var, "allow negative powers of P_n(x) via xinv");
  cmd->add_flag("--json", o.as_json, "line-delimited JSON output");
}

int run_eval(const EvalOpts& o, evaluate::Mode mode) {
  evaluate::EvalRequest req;
  req.spec = bands::make_spec(bands::parse_family(o.family), o.k, o.r, parse_weights(o.weights), o.inverse_var);
  req.n = o.n;
  req.mode = mode;
  req.method = evaluate::parse_method(o.method);
  auto res = evaluate::evaluate(req);
  if (o.as_json) {
    json j = json_io::to_json(res);
    j["request"] = json_io::to_json(req);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << res.value.str() << "\n";
    for (const auto& tag : res.tags) std::cerr << "note: " << tag << "\n";
  }
  return 0;
}

struct GfOpts {
  std::string which;
  unsigned k = 1, r = 0, series = 0;
  std::string weights;
};

int run_gf(const GfOpts& o) {
  auto w = parse_weights(o.weights);
  const unsigned t = static_cast<unsigned>(w.size() - 1);
  auto g = genfun::build_gf(o.k, t, o.r, w, genfun::parse_kind(o.which));
  json j = json_io::to_json(g.total);
  if (!g.per_grade.empty()) {
    j["per_grade"] = json::array();
    for (const auto& p : g.per_grade) j["per_grade"].push_back(json_io::to_json(p));
  }
  if (o.series > 0) {
    json s = json::array();
    for (const auto& c : exactalg::rational_series(g.total, o.series)) s.push_back(c.str());
    j["series"] = s;
  }
  std::cout << j.dump() << "\n";
  return 0;
}

struct CountOpts {
  std::string set;
  std::string family = "toeplitz";
  std::string method = "transfer";
  unsigned n = 1;
  bool complement = false;
  bool as_json = false;
};

int run_count(const CountOpts& o) {
  auto res = evaluate::count_restricted(parse_set(o.set), o.n, bands::parse_family(o.family), o.complement,
                                        evaluate::parse_method(o.method));
  if (o.as_json) {
    std::cout << json{{"value", res.value.str()}, {"method", res.method}, {"warnings", res.warnings}}.dump() << "\n";
  } else {
    std::cout << res.value << "\n";
    for (const auto& wmsg : res.warnings) std::cerr << "warning: " << wmsg << "\n";
  }
  return 0;
}

struct MatrixOpts {
  std::string kind;
  unsigned k = 1, t = 1, r = 0, n = 0;
  std::string weights;
  std::string family = "circulant";
  bool inverse_var = false;
};

int run_matrix(const MatrixOpts& o) {
  std::vector<Poly> w = o.weights.empty() ? transfer::symbolic_weights(o.t) : parse_weights(o.weights);
  const unsigned t = static_cast<unsigned>(w.size() - 1);
  if (!o.weights.empty() && t != o.t) throw ArgumentError("--t disagrees with the number of weights");
  json j;
  if (o.kind == "K") {
    j = json_io::to_json(transfer::build_K(o.k, t, w));
  } else if (o.kind == "Pi") {
    j = json_io::to_json(transfer::build_Pi(o.k, t, o.r, w));
  } else if (o.kind == "A") {
    j = json_io::to_json(transfer::build_A_graded(o.k, t, o.r, w));
  } else if (o.kind == "D") {
    j = json_io::to_json(transfer::build_D(o.r, t, w));
  } else if (o.kind == "AW" || o.kind == "AV") {
    j = json_io::to_json(
        transfer::build_A_WV(o.k, t, o.r, w, o.kind == "AW" ? transfer::WVVariant::W : transfer::WVVariant::V));
  } else if (o.kind == "band") {
    if (o.n < 1) throw ArgumentError("--kind band needs --n");
    auto spec = bands::make_spec(bands::parse_family(o.family), o.k, o.r, w, o.inverse_var);
    j = json_io::to_json(bands::build_kron_band(spec, o.n));
  } else {
    throw ArgumentError("unknown --kind '" + o.kind + "'");
  }
  std::cout << j.dump() << "\n";
  return 0;
}

struct VerifyOpts {
  std::string suite = "all";
  verify::Bounds bounds;
  bool as_json = false;
};

int run_verify(const VerifyOpts& o) {
  auto rep = verify::run_suite(o.suite, o.bounds);
  if (o.as_json) {
    for (const auto& c : rep.cells) {
      std::cout << json{{"suite", c.suite}, {"label", c.label}, {"ok", c.ok}, {"checks", c.checks},
                        {"detail", c.detail}}.dump()
                << "\n";
    }
    std::cout << json{{"seed", rep.seed}, {"cells", rep.cells.size()}, {"failures", rep.failures()}}.dump() << "\n";
  } else {
    std::cout << "seed " << rep.seed << "\n";
    for (const auto& c : rep.cells) {
      std::cout << (c.ok ? "PASS " : "FAIL ") << c.suite << ": " << c.label << " (" << c.checks << " checks)";
      if (!c.ok) std::cout << " -- " << c.detail;
      std::cout << "\n";
    }
    std::cout << rep.cells.size() - rep.failures() << "/" << rep.cells.size() << " cells passed, seed "
              << rep.seed << "\n";
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permanents and rook polynomials of banded matrices by transfer matrices"};
  app.require_subcommand(1);

  EvalOpts per_opts, rook_opts;
  auto* per = app.add_subcommand("per", "permanent of a band matrix (x) J_k");
  add_eval_options(per, per_opts);
  auto* rook = app.add_subcommand("rook", "rook polynomial of a band matrix (x) J_k, in x");
  add_eval_options(rook, rook_opts);

  GfOpts gf_opts;
  auto* gf = app.add_subcommand("gf", "rational generating function in y");
  gf->add_option("--which", gf_opts.which, "toeplitz_rook | circulant_rook | toeplitz_per | circulant_per")
      ->required();
  gf->add_option("--k", gf_opts.k)->capture_default_str();
  gf->add_option("--r", gf_opts.r)->capture_default_str();
  gf->add_option("--weights", gf_opts.weights, "w_0,...,w_t")->required();
  gf->add_option("--series", gf_opts.series, "also expand to this order");

  CountOpts count_opts;
  auto* count = app.add_subcommand("count", "permutations with sigma(i) - i restricted to a set");
  count->add_option("--set", count_opts.set, "allowed displacements, e.g. 0,1")->required();
  count->add_option("--family", count_opts.family, "toeplitz (exact) | circulant (mod n)")->capture_default_str();
  count->add_option("--n", count_opts.n)->required();
  count->add_option("--method", count_opts.method, "transfer | oracle")->capture_default_str();
  count->add_flag("--complement", count_opts.complement, "count permutations avoiding the set");
  count->add_flag("--json", count_opts.as_json);

  MatrixOpts mat_opts;
  auto* matrix = app.add_subcommand("matrix", "dump a transfer or band matrix as JSON");
  matrix->add_option("--kind", mat_opts.kind, "K | Pi | A | D | AW | AV | band")->required();
  matrix->add_option("--k", mat_opts.k)->capture_default_str();
  matrix->add_option("--t", mat_opts.t)->capture_default_str();
  matrix->add_option("--r", mat_opts.r)->capture_default_str();
  matrix->add_option("--n", mat_opts.n, "order for --kind band");
  matrix->add_option("--weights", mat_opts.weights, "defaults to a0,...,at");
  matrix->add_option("--family", mat_opts.family)->capture_default_str();
  matrix->add_flag("--inverse-var", mat_opts.inverse_var);

  VerifyOpts ver_opts;
  auto* ver = app.add_subcommand("verify", "run property suites");
  ver->add_option("--suite", ver_opts.suite, "all | zero-pattern | trace-derivative | structure | genfun | oracle")
      ->capture_default_str();
  ver->add_option("--max-k", ver_opts.bounds.max_k)->capture_default_str();
  ver->add_option("--max-t", ver_opts.bounds.max_t)->capture_default_str();
  ver->add_option("--max-n", ver_opts.bounds.max_n)->capture_default_str();
  ver->add_option("--oracle-size", ver_opts.bounds.oracle_size)->capture_default_str();
  ver->add_option("--samples", ver_opts.bounds.samples)->capture_default_str();
  ver->add_option("--seed", ver_opts.bounds.seed)->capture_default_str();
  ver->add_flag("--json", ver_opts.as_json);

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
    if (*per) return run_eval(per_opts, evaluate::Mode::permanent);
    if (*rook) return run_eval(rook_opts, evaluate::Mode::rook);
    if (*gf) return run_gf(gf_opts);
    if (*count) return run_count(count_opts);
    if (*matrix) return run_matrix(mat_opts);
    if (*ver) return run_verify(ver_opts);
  } catch (const evaluate::VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
