#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "forge/duality.hpp"
#include "forge/errors.hpp"
#include "forge/evaluator.hpp"
#include "forge/generators.hpp"
#include "forge/grid_ising.hpp"
#include "forge/ising_graph.hpp"
#include "forge/model_dsl.hpp"
#include "forge/pipeline.hpp"
#include "forge/potts.hpp"

namespace {

using namespace forge;

struct Config {
  std::string input;
  std::string artifact;
  std::string output;
  std::string gen;
  std::string trace;
  double tol = 1e-10;
  int cap = 26;
  int threads = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ParseError(0, 0, "cannot write '" + path + "'");
}

SpinModel load_model(const Config& cfg) {
  if (!cfg.gen.empty()) return parse_gen_spec(cfg.gen);
  if (cfg.input.empty())
    throw ParseError(0, 0, "no input: give a model file or --gen kind:RxC:J");
  return parse_model(read_file(cfg.input));
}

std::string fmt_complex(std::complex<double> z) {
  std::string s = format_double(z.real());
  if (z.imag() >= 0.0) s += "+";
  return s + format_double(z.imag()) + "i";
}

void print_z(const char* label, const ZReport& r) {
  const auto c = r.value.as_complex();
  std::printf("%-10s %s %s %lld %s %.3f\n", label,
              format_double(c.real()).c_str(), format_double(c.imag()).c_str(),
              static_cast<long long>(r.n_configs), method_name(r.method).c_str(),
              r.elapsed_ms);
}

void write_graph_artifact(const Config& cfg, const CompileResult& cr) {
  if (cfg.output.empty()) return;
  write_file(cfg.output, serialize_ising(cr.graph));
  std::string prov = "# origin of each graph vertex\n";
  for (std::size_t v = 0; v < cr.vertex_names.size(); ++v)
    prov += "v" + std::to_string(v) + " " + cr.vertex_names[v] + "\n";
  write_file(cfg.output + ".prov", prov);
  std::printf("wrote %s (+ .prov)\n", cfg.output.c_str());
}

int report_verdict(const ZValue& za, const ZValue& zb, const Prefactor& pa,
                   const Prefactor& pb, double tol) {
  const auto v = check_equivalence(za, zb, prefactor_mul(pb, pa.inverse()), tol);
  std::printf("relative error %.3e (tol %.1e)\n", v.relative_error, tol);
  std::printf(v.pass ? "PASS\n" : "FAIL\n");
  return v.pass ? 0 : 1;
}

int cmd_compile(const Config& cfg) {
  const SpinModel model = load_model(cfg);
  const CompileResult cr = compile_model(model);
  const auto diag = validate(cr.graph);
  std::printf("compiled: %d vertices, %d edges, %zu constraints, %d term variables\n",
              diag.vertex_count, diag.edge_count, cr.system.constraints.size(),
              cr.n_variables);
  std::printf("prefactor: log|P| = %s, arg P = %s\n",
              format_double(cr.graph.prefactor.log_magnitude).c_str(),
              format_double(cr.graph.prefactor.phase).c_str());
  write_graph_artifact(cfg, cr);

  const EvalOptions eval{cfg.cap, cfg.threads};
  int rc = 0;
  try {
    const ZReport zm = exact_z_model(model, eval);
    const ZReport zg = exact_z_ising(cr.graph, eval);
    print_z("Z(model)", zm);
    print_z("Z(graph)", zg);
    rc = report_verdict(zm.value, zg.value, model.prefactor, cr.graph.prefactor,
                        cfg.tol);
  } catch (const CapExceeded&) {
    std::printf("verification skipped: free-spin count exceeds --cap %d\n", cfg.cap);
  }
  return rc;
}

int cmd_verify(const Config& cfg) {
  const SpinModel model = load_model(cfg);
  const EvalOptions eval{cfg.cap, cfg.threads};

  ZReport zb;
  Prefactor pb;
  if (cfg.artifact.empty()) {
    const CompileResult cr = compile_model(model);
    zb = exact_z_ising(cr.graph, eval);
    pb = cr.graph.prefactor;
  } else {
    const std::string text = read_file(cfg.artifact);
    std::istringstream ss(text);
    std::string tag;
    ss >> tag;
    if (tag == "isinggraph") {
      const IsingGraph g = parse_ising(text);
      zb = exact_z_ising(g, eval);
      pb = g.prefactor;
    } else if (tag == "gridising") {
      const GridIsing grid = parse_grid(text);
      zb = exact_z_ising(grid_to_graph(grid), eval);
      pb = grid.prefactor;
    } else {
      throw ParseError(1, 1, "unrecognized artifact '" + cfg.artifact +
                                 "' (want isinggraph or gridising)");
    }
  }

  const ZReport za = exact_z_model(model, eval);
  print_z("Z(model)", za);
  print_z("Z(artifact)", zb);
  return report_verdict(za.value, zb.value, model.prefactor, pb, cfg.tol);
}

int cmd_planarize(const Config& cfg) {
  const SpinModel model = load_model(cfg);
  const CompileResult cr = compile_model(model);

  EmbedOptions eo;
  eo.tol = cfg.tol;
  eo.threads = cfg.threads;
  eo.trace_dir = cfg.trace;
  eo.verify_steps = true;
  eo.verify_cap = std::min(cfg.cap, 20);
  const EmbedResult er = embed_grid(cr.graph, eo);

  const auto& st = er.stats;
  std::printf("grid %dx%d: %d pinned cells, %d splits, %d crossings, %d subdivisions, "
              "%d filler pairs, %d steps\n",
              er.grid.width, er.grid.height, er.grid.pinned_count(), st.splits,
              st.crossings, st.subdivisions, st.filler_pairs, st.steps);
  if (st.verified_through_step >= 0)
    std::printf("step checks verified through step %d of %d\n",
                st.verified_through_step, st.steps);
  else
    std::printf("every rewrite step verified exactly\n");
  if (!cfg.output.empty()) {
    write_file(cfg.output, serialize_grid(er.grid));
    std::printf("wrote %s\n", cfg.output.c_str());
  }

  const EvalOptions eval{cfg.cap, cfg.threads};
  int rc = 0;
  try {
    const ZReport zm = exact_z_model(model, eval);
    const ZReport zg = exact_z_ising(grid_to_graph(er.grid), eval);
    print_z("Z(model)", zm);
    print_z("Z(grid)", zg);
    rc = report_verdict(zm.value, zg.value, model.prefactor, er.grid.prefactor,
                        cfg.tol);
  } catch (const CapExceeded&) {
    std::printf("end-to-end verification skipped: exceeds --cap %d\n", cfg.cap);
  }
  return rc;
}

int cmd_dual(const Config& cfg) {
  const SpinModel model_in = load_model(cfg);
  const SpinModel model = model_in.pure_spin() ? model_in : encode_potts(model_in);
  const CompileResult cr = compile_model(model);
  const DualModel dm = decimate_blacks(cr.graph, cr.n_variables);

  std::printf("decimated %d black spins over %zu white spins\n", cr.n_variables,
              dm.fields.size());
  for (const auto& f : dm.fits) {
    const std::string& name = cr.vertex_names[f.black];
    switch (f.degree) {
      case 0:
        std::printf("  v%-3d %-10s deg 0: factor %s\n", f.black, name.c_str(),
                    fmt_complex(f.constant).c_str());
        break;
      case 1:
        std::printf("  v%-3d %-10s deg 1: h = %s, A = %s (branch %d)\n", f.black,
                    name.c_str(), fmt_complex(f.leg.h).c_str(),
                    fmt_complex(f.leg.a).c_str(), f.leg.branch_h);
        break;
      case 2:
        std::printf("  v%-3d %-10s deg 2: K = %s, h = %s, A = %s (branches %d,%d)\n",
                    f.black, name.c_str(), fmt_complex(f.pair.k).c_str(),
                    fmt_complex(f.pair.h1).c_str(), fmt_complex(f.pair.a).c_str(),
                    f.pair.branch_k, f.pair.branch_h1);
        break;
      default:
        std::printf("  v%-3d %-10s deg 3: c123 = %s, c12 = %s, c1 = %s\n", f.black,
                    name.c_str(), fmt_complex(f.triangle.coeff[7]).c_str(),
                    fmt_complex(f.triangle.coeff[3]).c_str(),
                    fmt_complex(f.triangle.coeff[1]).c_str());
        break;
    }
  }

  const EvalOptions eval{cfg.cap, cfg.threads};
  const std::complex<double> zm = exact_z_model(model, eval).value.as_complex();
  const std::complex<double> zd = dual_model_z(dm);
  const std::complex<double> predicted =
      prefactor_mul(cr.graph.prefactor, dm.constant).as_complex() * zd;
  const double rel =
      std::abs(zm - predicted) / std::max(std::abs(zm), 1e-300);
  std::printf("Z(model)          = %s\n", fmt_complex(zm).c_str());
  std::printf("prefactor * Z(dual) = %s\n", fmt_complex(predicted).c_str());
  std::printf("relative error %.3e (tol %.1e)\n", rel, cfg.tol);

  // For a generated square patch, also run the textbook-form probe.
  if (cfg.gen.rfind("square:", 0) == 0) {
    int rows = 0, cols = 0;
    char trail = 0;
    const std::string dims = cfg.gen.substr(7, cfg.gen.find(':', 7) - 7);
    if (std::sscanf(dims.c_str(), "%dx%d%c", &rows, &cols, &trail) == 2 &&
        (rows + 1) * (cols + 1) <= 12) {
      const ComplexField j =
          parse_coupling(cfg.gen.substr(cfg.gen.find(':', 7) + 1));
      std::printf("%s", render_duality_report(
                            derive_square_duality(rows + 1, cols + 1, j)).c_str());
    }
  }

  const bool pass = rel <= cfg.tol;
  std::printf(pass ? "PASS\n" : "FAIL\n");
  return pass ? 0 : 1;
}

int cmd_pipeline(const Config& cfg) {
  const SpinModel model = load_model(cfg);
  PipelineOptions po;
  po.tol = cfg.tol;
  po.verify_cap = cfg.cap;
  po.threads = cfg.threads;
  po.trace_dir = cfg.trace;
  const PipelineResult res = run_pipeline(model, po);

  for (const auto& s : res.stages) {
    if (s.checked)
      std::printf("stage %-8s %-4s relative error %.3e  (%.1f ms)\n", s.name.c_str(),
                  s.pass ? "PASS" : "FAIL", s.relative_error, s.elapsed_ms);
    else
      std::printf("stage %-8s skipped exact check (over --cap %d)  (%.1f ms)\n",
                  s.name.c_str(), cfg.cap, s.elapsed_ms);
  }
  const auto& st = res.embedded.stats;
  std::printf("grid %dx%d: %d pinned cells, %d crossings, %d steps\n",
              res.embedded.grid.width, res.embedded.grid.height,
              res.embedded.grid.pinned_count(), st.crossings, st.steps);
  if (res.end_to_end_verified)
    std::printf("end-to-end verified\n");
  else if (st.verified_through_step >= 0)
    std::printf("verified-through-step-%d of %d\n", st.verified_through_step, st.steps);
  else
    std::printf("every rewrite step verified exactly\n");
  if (!cfg.output.empty()) {
    write_file(cfg.output, serialize_grid(res.embedded.grid));
    std::printf("wrote %s\n", cfg.output.c_str());
  }
  return res.any_check_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ising-forge: compiles discrete lattice models onto a rectangular "
               "Ising grid with uniform i*pi/4 couplings"};
  app.require_subcommand(1);

  Config cfg;
  auto add_common = [&cfg](CLI::App* c) {
    c->add_option("input", cfg.input, "model description file");
    c->add_option("-o,--output", cfg.output, "write the resulting artifact here");
    c->add_option("--tol", cfg.tol, "relative verification tolerance")
        ->check(CLI::PositiveNumber);
    c->add_option("--cap", cfg.cap, "max free spins for exact enumeration")
        ->check(CLI::Range(1, 28));
    c->add_option("--threads", cfg.threads, "evaluator worker threads")
        ->check(CLI::Range(1, 256));
    c->add_option("--trace", cfg.trace, "write one artifact per rewrite step here");
    c->add_option("--gen", cfg.gen, "generate the input instead: kind:RxC:J");
  };

  CLI::App* compile = app.add_subcommand("compile", "model -> uniform-coupling graph");
  CLI::App* verify = app.add_subcommand("verify", "check Z(model) against an artifact");
  CLI::App* planarize = app.add_subcommand("planarize", "model -> rectangular grid");
  CLI::App* dual = app.add_subcommand("dual", "sum out edge spins; fit (K, h, A)");
  CLI::App* pipeline = app.add_subcommand("pipeline", "full chain with verification");
  for (CLI::App* c : {compile, verify, planarize, dual, pipeline}) add_common(c);
  verify->add_option("artifact", cfg.artifact,
                     "compiled artifact (isinggraph or gridising text)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(compile)) return cmd_compile(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(planarize)) return cmd_planarize(cfg);
    if (app.got_subcommand(dual)) return cmd_dual(cfg);
    return cmd_pipeline(cfg);
  } catch (const forge::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const forge::MalformedGraph& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const forge::CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
