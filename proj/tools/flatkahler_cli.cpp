// flatkahler: command line front end.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "flatkahler/catalog.hpp"
#include "flatkahler/cohomology.hpp"
#include "flatkahler/crystal.hpp"
#include "flatkahler/doubles.hpp"
#include "flatkahler/hyperhermitian.hpp"
#include "flatkahler/manifold_io.hpp"
#include "flatkahler/twistor.hpp"

namespace fk = flatkahler;
using fk::crystal::FlatKahlerData;
using fk::Mat;

namespace {

int code(fk::ExitCode c) { return static_cast<int>(c); }

FlatKahlerData load(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return fk::io::from_json(os.str());
  }
  return fk::io::read_manifold(path);
}

void require_valid(const FlatKahlerData& data) {
  if (!fk::crystal::validate(data).valid())
    throw fk::InvalidData("'" + data.label() + "' does not validate; run the validate command for details");
}

unsigned thread_override() {
  const char* env = std::getenv("FLATKAHLER_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 256) throw fk::ParseError("FLATKAHLER_THREADS must be an integer in [1, 256]");
  return static_cast<unsigned>(v);
}

int cmd_validate(const std::string& path, int cap) {
  const auto data = load(path);
  const auto r = fk::crystal::validate(data, cap);
  std::cout << "label: " << data.label() << "\n"
            << "complex dimension: " << data.n() << "\n"
            << "group order: " << r.group_order << "\n"
            << "closed under composition: " << (r.closed ? "yes" : "no") << "\n"
            << "complex structure residual: " << r.complex_structure_residual << "\n"
            << "free: " << (r.free ? "yes" : "no") << "\n";
  if (r.free_witness) {
    std::cout << "  fixed by: " << fk::crystal::describe(*r.free_witness) << "\n  fixed point: (";
    for (std::size_t i = 0; i < r.fixed_point->size(); ++i)
      std::cout << (i ? ", " : "") << fk::ratmath::to_string((*r.fixed_point)[i]);
    std::cout << ")\n";
  }
  std::cout << "holomorphic: " << (r.holomorphic ? "yes" : "no") << " (residual " << r.holomorphic_residual << ")\n";
  if (r.holomorphic_witness) std::cout << "  not holomorphic: " << fk::crystal::describe(*r.holomorphic_witness) << "\n";
  std::cout << "valid: " << (r.valid() ? "yes" : "no") << "\n";
  return code(r.valid() ? fk::ExitCode::kOk : fk::ExitCode::kInvalidData);
}

int cmd_hodge(const std::string& path) {
  const auto data = load(path);
  require_valid(data);
  const auto d = fk::cohomology::hodge_numbers(data);
  std::cout << "Betti numbers:\n";
  for (std::size_t k = 0; k < d.b.size(); ++k) std::cout << "b_" << k << " = " << d.b[k] << "\n";
  std::cout << "Hodge numbers h^{p,q} (row p, column q):\n";
  for (const auto& row : d.h) {
    for (std::size_t q = 0; q < row.size(); ++q) std::cout << (q ? " " : "") << row[q];
    std::cout << "\n";
  }
  std::cout << "max rounding residual: " << d.max_rounding_residual << "\n";
  return 0;
}

int cmd_obstruct(const std::string& path) {
  const auto data = load(path);
  require_valid(data);
  const long h20 = data.n() >= 2 ? fk::cohomology::hodge_numbers(data).h[2][0] : 0;
  std::cout << "non-algebraic deformations: " << (h20 > 0 ? "YES" : "NO") << " (h^{2,0} = " << h20 << ")\n";
  return 0;
}

std::string indexed_path(const std::string& out, std::size_t k) {
  const auto dot = out.rfind('.');
  const auto slash = out.find_last_of('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  const std::string stem = has_ext ? out.substr(0, dot) : out;
  return stem + "_" + std::to_string(k) + (has_ext ? out.substr(dot) : ".csv");
}

int cmd_scan(const std::string& path, int form, bool all, int grid, int sigma, const std::string& out) {
  const auto data = load(path);
  require_valid(data);
  const auto holomorphic = fk::cohomology::holomorphic_two_forms(data);
  if (holomorphic.empty()) throw fk::InvalidData("h^{2,0} = 0: there is no twistor family to scan");
  if (sigma < 0 || static_cast<std::size_t>(sigma) >= holomorphic.size())
    throw fk::InvalidData("--sigma must be below " + std::to_string(holomorphic.size()));
  const auto h = fk::hyperhermitian::assemble(data, holomorphic[static_cast<std::size_t>(sigma)]);
  const auto forms = fk::cohomology::invariant_two_forms(data);
  std::vector<std::size_t> which;
  if (all) {
    for (std::size_t k = 0; k < forms.size(); ++k) which.push_back(k);
  } else {
    if (form < 0 || static_cast<std::size_t>(form) >= forms.size())
      throw fk::InvalidData("--form must be below b_2 = " + std::to_string(forms.size()));
    which.push_back(static_cast<std::size_t>(form));
  }
  fk::twistor::ScanOptions options;
  options.threads = thread_override();
  std::cerr << "E has real dimension " << h.dim_e() << ", F has real dimension " << h.dim_f() << "\n";
  for (std::size_t k : which) {
    const auto report = fk::twistor::scan_locus(h, forms[k], grid, options);
    const bool invariant = fk::twistor::su2_invariance_test(h, forms[k]);
    const bool e_type = fk::twistor::e_block_defect(h, forms[k]) <= fk::tol::kFull;
    std::cerr << "form " << k << ": " << fk::twistor::to_string(report.classification)
              << " points=" << report.points.size() << " min=" << report.min_residual
              << " max=" << report.max_residual << " su2-invariant=" << (invariant ? "yes" : "no")
              << " e-block-(1,1)=" << (e_type ? "yes" : "no") << "\n";
    const std::string csv = fk::io::scan_csv(report);
    if (out.empty())
      std::cout << csv;
    else
      fk::io::write_file(all ? indexed_path(out, k) : out, csv);
  }
  return 0;
}

int cmd_double(const std::string& path, bool co, const std::string& out) {
  const auto data = load(path);
  const auto result = co ? fk::doubles::coquaternionic_double(data) : fk::doubles::quaternionic_double(data);
  const std::string text = fk::io::to_json(result.data);
  if (out.empty())
    std::cout << text;
  else
    fk::io::write_file(out, text);
  return 0;
}

int cmd_catalog(const std::string& name, bool list, const std::string& out) {
  if (list) {
    for (const auto& e : fk::catalog::list_catalog()) std::cout << e.name << "\t" << e.n << "\t" << e.description << "\n";
    return 0;
  }
  if (name.empty()) throw fk::ParseError("catalog needs a NAME or --list");
  const std::string text = fk::io::to_json(fk::catalog::build(name));
  if (out.empty())
    std::cout << text;
  else
    fk::io::write_file(out, text);
  return 0;
}

int cmd_certify(const std::string& path, int height) {
  const auto data = load(path);
  require_valid(data);
  if (height < 1) throw fk::InvalidData("--height must be positive");
  const auto forms = fk::cohomology::invariant_two_forms(data);
  const std::size_t k = forms.size();
  double combos = 1.0;
  for (std::size_t i = 0; i < k; ++i) combos *= 2.0 * height + 1.0;
  if (combos > 5e7)
    throw fk::InvalidData("search space of " + std::to_string(combos) + " combinations is too large; lower --height");
  const Mat& j = data.cplx();
  std::vector<int> c(k, -height);
  const auto total = static_cast<long long>(combos);
  for (long long step = 0; step < total; ++step) {
    if (step > 0)
      for (std::size_t i = 0; i < k; ++i) {
        if (++c[i] <= height) break;
        c[i] = -height;
      }
    Mat a = Mat::Zero(j.rows(), j.cols());
    for (std::size_t i = 0; i < k; ++i) a += c[i] * forms[i].matrix();
    if (a.isZero(0.0)) continue;
    const auto alpha = fk::cohomology::TwoForm::from_real(a);
    if (fk::twistor::hodge_residual(alpha, j) > fk::tol::kFull) continue;
    const Mat g = 0.5 * (a * j + (a * j).transpose());
    const Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= fk::tol::kNumeric * std::max(1.0, es.eigenvalues().maxCoeff())) continue;
    std::cout << "polarization found: coefficients [";
    for (std::size_t i = 0; i < k; ++i) std::cout << (i ? " " : "") << c[i];
    std::cout << "] on the invariant 2-form basis\n";
    return 0;
  }
  std::cout << "none up to height " << height << " (inconclusive)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat Kaehler manifolds as torus quotients: validation, invariants, twistor loci and doubles"};
  app.require_subcommand(1);

  std::string path, out, name;
  int cap = fk::kDefaultClosureCap, form = 0, grid = fk::kDefaultGridSize, sigma = 0, height = 2;
  bool all = false, co = false, list = false;

  auto* validate = app.add_subcommand("validate", "check closure, freeness and holomorphy");
  validate->add_option("file", path, "manifold JSON ('-' for stdin)")->required();
  validate->add_option("--cap", cap, "group closure size limit")->check(CLI::PositiveNumber);

  auto* hodge = app.add_subcommand("hodge", "Betti and Hodge numbers");
  hodge->add_option("file", path)->required();

  auto* obstruct = app.add_subcommand("obstruct", "existence of non-algebraic deformations");
  obstruct->add_option("file", path)->required();

  auto* scan = app.add_subcommand("scan", "Hodge loci of invariant 2-forms over the twistor sphere");
  scan->add_option("file", path)->required();
  auto* form_opt = scan->add_option("--form", form, "index into the invariant 2-form basis");
  auto* all_opt = scan->add_flag("--all", all, "scan every invariant 2-form");
  form_opt->excludes(all_opt);
  scan->add_option("--grid", grid, "Fibonacci grid size")->check(CLI::Range(100, 10000000));
  scan->add_option("--sigma", sigma, "index of the holomorphic 2-form defining the twistor family");
  scan->add_option("--out", out, "CSV output (with --all: one file per form, suffixed _k)");

  auto* dbl = app.add_subcommand("double", "quaternionic (or co-quaternionic) double");
  dbl->add_option("file", path)->required();
  dbl->add_flag("--co", co, "use the cotangent bundle");
  dbl->add_option("--out", out, "output manifold JSON");

  auto* cat = app.add_subcommand("catalog", "write a built-in example");
  cat->add_option("name", name);
  cat->add_flag("--list", list, "list the built-in examples");
  cat->add_option("--out", out, "output manifold JSON");

  auto* certify = app.add_subcommand("certify-nonalgebraic", "bounded search for a rational Kaehler class");
  certify->add_option("file", path)->required();
  certify->add_option("--height", height, "coefficient bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(fk::ExitCode::kIoOrParse);
  }

  try {
    if (*validate) return cmd_validate(path, cap);
    if (*hodge) return cmd_hodge(path);
    if (*obstruct) return cmd_obstruct(path);
    if (*scan) return cmd_scan(path, form, all, grid, sigma, out);
    if (*dbl) return cmd_double(path, co, out);
    if (*cat) return cmd_catalog(name, list, out);
    if (*certify) return cmd_certify(path, height);
  } catch (const fk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return code(fk::ExitCode::kConsistency);
  }
  return code(fk::ExitCode::kIoOrParse);
}
