#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ncdef/elliptic.hpp"
#include "ncdef/errors.hpp"
#include "ncdef/io.hpp"
#include "ncdef/report.hpp"
#include "ncdef/selftest.hpp"

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::size_t hull_order = 4;
  int dmax = 24;
  std::string format = "md";
  bool full_complex = false;
  bool timing = false;
  std::string out;
};

void add_output_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "md"}))->capture_default_str();
  cmd->add_flag("--full-complex", f.full_complex, "Report cochains over all tuples, identities included");
  cmd->add_option("--out", f.out, "Write the report to PATH instead of stdout");
}

void add_pipeline_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--hull-order", f.hull_order, "Truncation order N of the hull (N >= 2)")
      ->check(CLI::Range(2, 12))
      ->capture_default_str();
  cmd->add_option("--dmax", f.dmax, "Degree ceiling for cokernel truncations")->check(CLI::Range(4, 200))->capture_default_str();
  cmd->add_flag("--timing", f.timing, "Include wall-clock seconds per stage (breaks byte-identical output)");
}

ncdef::PipelineOptions pipeline_options(const CommonFlags& f) {
  ncdef::PipelineOptions o;
  o.hull_order = f.hull_order;
  o.cokernel.d_max = f.dmax;
  if (o.cokernel.d_start + o.cokernel.window > o.cokernel.d_max)
    throw UsageError("--dmax must be at least " + std::to_string(o.cokernel.d_start + o.cokernel.window));
  o.full_complex = f.full_complex;
  o.timing = f.timing;
  return o;
}

ncdef::Scalar parse_rational_flag(const std::string& name, const std::string& text) {
  try {
    return ncdef::parse_scalar(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(name + ": " + e.what());
  }
}

ncdef::Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return ncdef::Json::parse(in);
  } catch (const ncdef::Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

void emit(const ncdef::Report& r, const CommonFlags& f) {
  write_text(f.out, f.format == "json" ? r.json_text() : r.markdown());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncommutative deformations of D-modules on elliptic curves and finite covers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ncdef 1.0");

  CommonFlags ell;
  std::string a_text, b_text, export_diagram, export_cover;
  bool no_tangent = false;
  auto* elliptic = app.add_subcommand("elliptic", "Run the full pipeline for y^2 = x^3 + a x + b");
  elliptic->add_option("--a", a_text, "Coefficient a (integer or p/q)")->required();
  elliptic->add_option("--b", b_text, "Coefficient b (integer or p/q)")->required();
  add_pipeline_flags(elliptic, ell);
  add_output_flags(elliptic, ell);
  elliptic->add_flag("--no-tangent-check", no_tangent, "Skip the validator-based tangent dimension check");
  elliptic->add_option("--export-diagram", export_diagram, "Also write the Ext diagram as an ncdef-diagram/1 document");
  elliptic->add_option("--export-cover", export_cover, "Also write the cover as an ncdef-cover/1 document");

  CommonFlags coh;
  std::string diagram_path;
  int max_degree = 2;
  auto* cohomology = app.add_subcommand("cohomology", "Cohomology of a diagram given as an ncdef-diagram/1 file");
  cohomology->add_option("diagram", diagram_path, "Diagram description (JSON)")->required();
  cohomology->add_option("--max-degree", max_degree, "Highest cohomological degree")->check(CLI::Range(0, 6))->capture_default_str();
  add_output_flags(cohomology, coh);

  CommonFlags hl;
  std::string cover_path;
  bool hull_no_tangent = false;
  auto* hull = app.add_subcommand("hull", "Hull of the deformation functor of a cover given as an ncdef-cover/1 file");
  hull->add_option("cover", cover_path, "Cover description (JSON)")->required();
  add_pipeline_flags(hull, hl);
  add_output_flags(hull, hl);
  hull->add_flag("--no-tangent-check", hull_no_tangent, "Skip the validator-based tangent dimension check");

  ncdef::SelftestOptions st;
  bool quick = false;
  auto* selftest = app.add_subcommand("selftest", "Run the randomized property suite");
  selftest->add_option("--seed", st.seed, "Random seed")->capture_default_str();
  selftest->add_flag("--quick", quick, "Smaller corpus, no elliptic-cover checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*elliptic) {
      const ncdef::Scalar a = parse_rational_flag("--a", a_text);
      const ncdef::Scalar b = parse_rational_flag("--b", b_text);
      ncdef::PipelineOptions opts = pipeline_options(ell);
      opts.tangent_check = !no_tangent;
      const ncdef::EllipticConfig cfg = ncdef::EllipticConfig::build(a, b);
      if (!export_cover.empty()) write_text(export_cover, ncdef::write_cover(cfg.cover, cfg.context_options(opts.cokernel)).dump(2) + "\n");
      if (!export_diagram.empty()) {
        const ncdef::ExtDiagram ext = ncdef::build_ext_diagram(cfg.cover, opts.cokernel);
        write_text(export_diagram, ncdef::write_diagram(ext.functor).dump(2) + "\n");
      }
      emit(ncdef::run_full_pipeline(cfg, opts), ell);
    } else if (*cohomology) {
      const ncdef::MorFunctor g = ncdef::read_diagram(read_json_file(diagram_path));
      emit(ncdef::cohomology_report(g, max_degree, coh.full_complex), coh);
    } else if (*hull) {
      ncdef::PipelineOptions opts = pipeline_options(hl);
      opts.tangent_check = !hull_no_tangent;
      const ncdef::Json doc = read_json_file(cover_path);
      ncdef::CoverConfig cfg = ncdef::read_cover(doc);
      if (!doc.contains("cokernel") || !doc.at("cokernel").contains("d_max") || hl.dmax != 24)
        cfg.options.cokernel.d_max = opts.cokernel.d_max;
      opts.cokernel = cfg.options.cokernel;
      emit(ncdef::hull_report(cfg, opts), hl);
    } else if (*selftest) {
      if (quick) {
        st.functors = 10;
        st.matrices = 40;
        st.algebras = 10;
        st.elliptic = false;
      }
      bool ok = true;
      for (const auto& r : ncdef::run_selftest(st)) {
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases";
        if (r.failures) std::cout << ", " << r.failures << " failures; first: " << r.first_failure;
        std::cout << ")\n";
        ok = ok && r.passed();
      }
      return ok ? 0 : kExitDomain;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ncdef::InvalidInput& e) {
    std::cerr << "error: invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ncdef::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
