// Command-line driver for verification campaigns, weight and constant
// evaluation, and free-energy computation.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "qdl/campaign.hpp"

namespace {

using namespace qdl;

struct GlobalOpts {
  std::string group = "real";
  double b_re = 0.8, b_im = 0.0;
  double q_modulus = 0.5, q_phase = 0.0;
  int n = 2;
  int samples = 10;
  std::uint64_t seed = 1;
  double tol = 0.0;
  int jobs = 1;
  std::string config_path;
  std::string out_path;
};

DilogSpec make_spec(const GlobalOpts& g) {
  if (g.group == "real") return DilogSpec::faddeev(cx(g.b_re, g.b_im));
  if (g.group == "real-zn")
    return DilogSpec::andersen_kashaev(g.n, cx(g.b_re, g.b_im));
  if (g.group == "circle-z")
    return DilogSpec::woronowicz(std::polar(g.q_modulus, g.q_phase));
  throw config_error("unknown group: " + g.group + " (real | real-zn | circle-z)");
}

cx parse_cx(const std::string& s) {
  double re = 0, im = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf", &re, &im) < 1)
    throw config_error("cannot parse complex value: " + s);
  return {re, im};
}

void apply_config_json(const ordered_json& j, CampaignSpec& c) {
  if (j.contains("quad")) {
    const auto& q = j["quad"];
    if (q.contains("rel_tol")) c.quad.rel_tol = q["rel_tol"].get<double>();
    if (q.contains("abs_tol")) c.quad.abs_tol = q["abs_tol"].get<double>();
    if (q.contains("max_panel_depth")) c.quad.max_panel_depth = q["max_panel_depth"].get<int>();
    if (q.contains("initial_radius")) c.quad.initial_radius = q["initial_radius"].get<double>();
    if (q.contains("radius_growth")) c.quad.radius_growth = q["radius_growth"].get<double>();
    if (q.contains("max_radius")) c.quad.max_radius = q["max_radius"].get<double>();
    if (q.contains("discrete_cutoff")) c.quad.discrete_cutoff = q["discrete_cutoff"].get<int>();
    if (q.contains("pole_guard")) c.quad.pole_guard = q["pole_guard"].get<double>();
  }
  if (j.contains("offsets")) {
    const auto& o = j["offsets"];
    if (o.contains("self_duality_lo")) c.offsets.self_duality_lo = o["self_duality_lo"].get<double>();
    if (o.contains("self_duality_hi")) c.offsets.self_duality_hi = o["self_duality_hi"].get<double>();
    if (o.contains("fterm_x")) c.offsets.fterm_x = o["fterm_x"].get<double>();
    if (o.contains("fterm_y")) c.offsets.fterm_y = o["fterm_y"].get<double>();
    if (o.contains("fterm_z")) c.offsets.fterm_z = o["fterm_z"].get<double>();
    if (o.contains("five1_x")) c.offsets.five1_x = o["five1_x"].get<double>();
    if (o.contains("five1_y")) c.offsets.five1_y = o["five1_y"].get<double>();
    if (o.contains("range")) c.offsets.range = o["range"].get<double>();
  }
}

void print_value_record(const char* what, cx v) {
  ordered_json j;
  j["what"] = what;
  j["value"] = cx_json(v);
  j["modulus"] = num_str(std::abs(v));
  j["phase"] = num_str(std::arg(v));
  std::cout << j.dump(2) << "\n";
}

int cmd_verify(const GlobalOpts& g, const std::string& target) {
  CampaignSpec c;
  c.target = parse_target(target);
  c.dilog = make_spec(g);
  c.samples = g.samples;
  c.seed = g.seed;
  c.tol = g.tol;
  c.jobs = g.jobs;
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) throw config_error("cannot open config file: " + g.config_path);
    ordered_json j = ordered_json::parse(in);
    apply_config_json(j, c);
  }
  auto doc = run_verify(c);
  if (!g.out_path.empty()) {
    std::ofstream out(g.out_path);
    if (!out) throw config_error("cannot open output file: " + g.out_path);
    out << doc.to_json().dump(2) << "\n";
  }
  std::cout << "target " << target << " on " << c.dilog.name() << ": " << doc.passed << "/"
            << doc.records.size() << " samples passed, max residual " << doc.max_residual
            << " (tol " << c.effective_tol() << "), " << doc.wall_ms << " ms\n";
  for (const auto& r : doc.records)
    if (!r.error.empty())
      std::cout << "  sample " << r.index << " error: " << r.error << "\n";
  return doc.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qdl;
  CLI::App app{"quantum-dilogarithm lattice toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--group", g.group, "group: real | real-zn | circle-z");
  app.add_option("--b-re", g.b_re, "Re b (real / real-zn groups)");
  app.add_option("--b-im", g.b_im, "Im b");
  app.add_option("--q-modulus", g.q_modulus, "|q0| (circle-z group)");
  app.add_option("--q-phase", g.q_phase, "arg q0 (circle-z group)");
  app.add_option("--n", g.n, "Z_N modulus (real-zn group)");
  app.add_option("--samples", g.samples, "samples per campaign");
  app.add_option("--seed", g.seed, "campaign seed");
  app.add_option("--tol", g.tol, "residual tolerance override");
  app.add_option("--jobs", g.jobs, "parallel sample evaluations");
  app.add_option("--config", g.config_path, "JSON config with quad/offset defaults");
  app.add_option("--out", g.out_path, "write the structured report here");

  std::string verify_target;
  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->add_option("target", verify_target,
                     "inversion | five-term | self-duality | constants | irc-tetra | "
                     "vertex-zte | field-zte | weights-crosscheck")
      ->required();

  std::string eval_what;
  std::vector<std::string> eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate one object");
  eval->add_option("what", eval_what, "phi | kernel | gaussian | vertex-weight | irc-weight | hyper2f2")
      ->required();
  eval->add_option("--x", eval_args, "arguments as re[,im][:disc], repeatable")
      ->expected(-1);

  std::string fe_formula = "pf-2";
  std::vector<double> fe_thetas, fe_sides;
  std::vector<std::string> fe_fields;
  int fe_zbb_n = 2;
  auto* fe = app.add_subcommand("free-energy", "evaluate a closed-form partition function per site");
  fe->add_option("--thetas", fe_thetas, "triangle angles theta1,theta2,theta3")->expected(3);
  fe->add_option("--sides", fe_sides, "triangle sides a1,a2,a3")->expected(3);
  fe->add_option("--fields", fe_fields, "external fields phi1 phi2 phi3 (complex re,im)")
      ->expected(3);
  fe->add_option("--formula", fe_formula, "pf-2 | pf-field | pf-zbb");
  fe->add_option("--zbb-n", fe_zbb_n, "N for pf-zbb");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (*verify) return cmd_verify(g, verify_target);

    if (*eval) {
      DilogSpec spec = make_spec(g);
      QuadConfig cfg;
      auto point_arg = [&](size_t i) {
        if (i >= eval_args.size()) throw config_error("eval: missing argument");
        std::string s = eval_args[i];
        long disc = 0;
        auto colon = s.find(':');
        if (colon != std::string::npos) {
          disc = std::stol(s.substr(colon + 1));
          s = s.substr(0, colon);
        }
        return GroupPoint::of(spec.kind(), parse_cx(s), disc);
      };
      if (eval_what == "phi") {
        print_value_record("phi", phi(spec, point_arg(0), cfg));
      } else if (eval_what == "kernel") {
        print_value_record("kernel", fourier_kernel(point_arg(0), point_arg(1)));
      } else if (eval_what == "gaussian") {
        print_value_record("gaussian", gaussian(point_arg(0)));
      } else if (eval_what == "vertex-weight") {
        auto e = EdgeConfig::reduced(point_arg(0), point_arg(1), point_arg(2), point_arg(3),
                                     point_arg(4));
        SpectralTriple t{point_arg(5), point_arg(6), point_arg(7)};
        print_value_record("vertex-weight", vertex_weight_selfdual(e, t, spec, cfg).value);
      } else if (eval_what == "irc-weight") {
        CornerConfig k{point_arg(0), point_arg(1), point_arg(2), point_arg(3),
                       point_arg(4), point_arg(5), point_arg(6), point_arg(7)};
        SpectralTriple t{point_arg(8), point_arg(9), point_arg(10)};
        print_value_record("irc-weight", irc_weight(k, t, spec, cfg));
      } else if (eval_what == "hyper2f2") {
        print_value_record("hyper2f2",
                           hyper2F2(point_arg(0), point_arg(1), point_arg(2), point_arg(3),
                                    point_arg(4), spec, cfg));
      } else {
        throw config_error("unknown eval target: " + eval_what);
      }
      return 0;
    }

    if (*fe) {
      ModularParam m(cx(g.b_re, g.b_im));
      FreeEnergyResult r;
      if (fe_formula == "pf-field") {
        if (fe_fields.size() != 3) throw config_error("pf-field needs --fields");
        std::array<cx, 3> f{parse_cx(fe_fields[0]), parse_cx(fe_fields[1]),
                            parse_cx(fe_fields[2])};
        r = z_field_inf(f, m);
      } else {
        SphericalTriangle t;
        if (fe_thetas.size() == 3)
          t = triangle_from_thetas(fe_thetas[0], fe_thetas[1], fe_thetas[2]);
        else if (fe_sides.size() == 3)
          t = triangle_from_sides(fe_sides[0], fe_sides[1], fe_sides[2]);
        else
          throw config_error("free-energy needs --thetas or --sides");
        if (fe_formula == "pf-2")
          r = z_vert_inf(t, m);
        else if (fe_formula == "pf-zbb")
          r = kappa_zbb(fe_zbb_n, t);
        else
          throw config_error("unknown formula: " + fe_formula);
      }
      ordered_json j;
      j["formula"] = fe_formula;
      j["betas"] = {num_str(r.betas[0]), num_str(r.betas[1]), num_str(r.betas[2]),
                    num_str(r.betas[3])};
      j["log_z"] = cx_json(r.log_z);
      j["z"] = cx_json(r.z);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const degenerate_triangle& e) {
    std::cerr << "degenerate geometry: " << e.what()
              << " (angles and derived betas must lie strictly inside (0, pi))\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
