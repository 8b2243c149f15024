#include "lrcyc/cli.hpp"

#include <filesystem>
#include <iomanip>

#include <CLI11.hpp>

#include "lrcyc/examples.hpp"
#include "lrcyc/json_io.hpp"

namespace lrcyc {

namespace {

struct Globals {
  std::string format = "json";
  double tolerance = 1e-9;
  std::string b_variant = "full";
  std::uint64_t seed = 1;
  bool no_timing = false;
};

void emit(const Report& r, const Globals& g, std::ostream& out) {
  if (g.format == "text")
    out << r.to_text(!g.no_timing);
  else
    out << std::setw(2) << r.to_json(!g.no_timing) << "\n";
}

void add_admissibility(Report& r, const PairingContext& ctx, double tol) {
  for (const auto& c : check_admissible(ctx)) {
    const double t = ctx.target->backend() == Backend::Approx ? tol : 0.0;
    r.check("admissible." + c.name, c.residual, t);
  }
}

Report run_hh(const std::string& file, int p, bool cyclic, bool ker_b) {
  Stopwatch sw;
  Report r;
  r.command = cyclic ? "hc" : "hh";
  r.inputs["algebra"] = std::filesystem::path(file).filename().string();
  r.inputs["degree"] = p;
  if (p < 0) throw UsageError("degree must be nonnegative");
  StandardAlgebra a = parse_algebra(read_json_file(file));
  r.outputs["dimension"] = cyclic ? hc_dim(a.algebra, p) : hh_dim(a.algebra, p);
  if (ker_b) r.outputs["ker_B_dimension"] = ker_B_in_hc(a.algebra, p).size();
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

Report run_lie_homology(const std::string& lr_file, const std::string& module, const std::string& algebra_file,
                        int p) {
  Stopwatch sw;
  Report r;
  r.command = "lie-homology";
  r.inputs["lr"] = std::filesystem::path(lr_file).filename().string();
  r.inputs["module"] = module == "trivial" ? module : std::filesystem::path(module).filename().string();
  r.inputs["degree"] = p;
  if (p < 0) throw UsageError("degree must be nonnegative");
  std::optional<StandardAlgebra> acted;
  if (!algebra_file.empty()) acted = parse_algebra(read_json_file(algebra_file));
  LRPtr lr = parse_lie_rinehart(read_json_file(lr_file), acted ? &*acted : nullptr);
  ModulePtr m = parse_module(module == "trivial" ? Json(module) : read_json_file(module), *lr);
  r.outputs["dimension"] = lr_homology_dim(lr, m, p);
  r.outputs["chain_dimension"] = lr_chain_dim(*lr, *m, p);
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

PairingSetup load_setup(const std::string& file) {
  return parse_pairing_setup(read_json_file(file), std::filesystem::path(file).parent_path());
}

Report run_pair(const std::string& file, const Globals& g) {
  Stopwatch sw;
  Report r;
  r.command = "pair";
  r.inputs["setup"] = std::filesystem::path(file).filename().string();
  PairingSetup s = load_setup(file);
  r.inputs["p"] = s.ctx.p;
  r.outputs["traces"] = s.trace_names;
  add_admissibility(r, s.ctx, g.tolerance);
  if (s.lr_chain && s.hochschild_chain) {
    const PairingValue v = pair(s.ctx, *s.lr_chain, *s.hochschild_chain);
    r.outputs["pairing"] = v.to_string();
    const std::complex<double> z = v.numeric();
    r.outputs["pairing_numeric"] = Json::array({z.real(), z.imag()});
    const bool lr_cycle = is_lr_cycle(*s.lr_chain);
    const bool hc_cycle = is_cyclic_cycle(*s.hochschild_chain);
    r.outputs["lr_chain_is_cycle"] = lr_cycle;
    r.outputs["hochschild_chain_is_cyclic_cycle"] = hc_cycle;
    if (lr_cycle && hc_cycle) {
      try {
        ClassPairing cp = pair_classes(s.ctx, *s.lr_chain, *s.hochschild_chain);
        r.outputs["class_pairing"] = cp.value.to_string();
        r.outputs["ker_B_verified"] = cp.ker_B_verified;
      } catch (const PreconditionError& e) {
        r.outputs["class_pairing"] = nullptr;
        r.outputs["class_pairing_error"] = e.what();
      }
    }
  }
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

Report run_lemmas(const std::string& file, std::size_t samples, std::uint64_t seed, const Globals& g) {
  Stopwatch sw;
  Report r;
  r.command = "lemmas";
  r.inputs["setup"] = std::filesystem::path(file).filename().string();
  r.inputs["samples"] = samples;
  r.inputs["seed"] = seed;
  const BVariant variant = parse_b_variant(g.b_variant);
  r.inputs["b_variant"] = b_variant_name(variant);
  PairingSetup s = load_setup(file);
  r.inputs["p"] = s.ctx.p;
  add_admissibility(r, s.ctx, g.tolerance);
  if (s.ctx.p < 1) throw UsageError("the lemma identities need p >= 1");
  LemmaSweep sweep = lemma_sweep(s.ctx, samples, seed, variant);
  r.outputs["lemma2_sign"] = kLemma2Sign;
  r.outputs["stokes_sign"] = kStokesSign;
  const bool exact = s.ctx.target->backend() != Backend::Approx;
  auto record = [&](const char* key, double max, bool all_zero) {
    r.outputs[std::string(key) + "_max"] = max;
    if (exact)
      r.check(key, all_zero ? 0.0 : max, 0.0);
    else
      r.check(key, max, g.tolerance);
  };
  record("lemma1", sweep.lemma1_max, sweep.lemma1_exact);
  record("lemma2", sweep.lemma2_max, sweep.lemma2_exact);
  record("stokes", sweep.stokes_max, sweep.stokes_exact);
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

Report run_fredholm_all(int p) {
  Stopwatch sw;
  Report r;
  r.command = "demo fredholm";
  r.inputs["model"] = "all";
  r.inputs["p"] = p;
  Json models = Json::array();
  std::optional<Scalar> c;
  bool constant = true;
  std::size_t with_index = 0;
  for (FredholmModel m : standard_fredholm_models()) {
    m.p = p;
    Report one = demo_fredholm(m);
    models.push_back(one.outputs);
    models.back()["model"] = m.name;
    for (const auto& [k, v] : one.pass.items()) r.check(m.name + "." + k, one.residuals[k].get<double>(), 0.0);
    FredholmResult res = fredholm_pairing(m);
    if (res.ratio) {
      ++with_index;
      if (!c) c = res.ratio;
      else if (!(*c == *res.ratio)) constant = false;
    }
  }
  r.outputs["models"] = models;
  r.outputs["c_p"] = c ? Json(c->to_string()) : Json(nullptr);
  r.check_exact("ratio_constant", constant && with_index >= 3);
  r.check_exact("ratio_nonzero", c && !c->is_zero());
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairing between Lie-Rinehart homology with partial-trace coefficients and cyclic homology"};
  app.name("lrcyc");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--tolerance", g.tolerance, "zero threshold for approximate residuals")->check(CLI::NonNegativeNumber);
  app.add_option("--b-variant", g.b_variant, "full ((1-t)sN) or normalized (sN)")
      ->check(CLI::IsMember({"full", "normalized"}));
  app.add_option("--seed", g.seed, "seed for random samples");
  app.add_flag("--no-timing", g.no_timing, "write elapsed_ms as 0");

  std::string algebra_file, lr_file, module = "trivial", setup_file;
  int degree = 0;
  bool ker_b = false;
  std::size_t samples = 100;
  std::optional<std::uint64_t> lemma_seed;

  auto* hh = app.add_subcommand("hh", "Hochschild homology dimension");
  hh->add_option("--algebra", algebra_file)->required();
  hh->add_option("--degree", degree)->required();
  auto* hc = app.add_subcommand("hc", "cyclic homology dimension");
  hc->add_option("--algebra", algebra_file)->required();
  hc->add_option("--degree", degree)->required();
  hc->add_flag("--ker-b", ker_b, "also report dim ker(B: HC_p -> HH_{p+1})");
  auto* lh = app.add_subcommand("lie-homology", "Lie-Rinehart homology dimension");
  lh->add_option("--lr", lr_file)->required();
  lh->add_option("--module", module, "\"trivial\" or a module file");
  lh->add_option("--algebra", algebra_file, "algebra the action section refers to");
  lh->add_option("--degree", degree)->required();
  auto* pr = app.add_subcommand("pair", "admissibility and pairing of the chains in a setup file");
  pr->add_option("--setup", setup_file)->required();
  auto* lm = app.add_subcommand("lemmas", "random residuals of the three chain identities");
  lm->add_option("--setup", setup_file)->required();
  lm->add_option("--samples", samples)->check(CLI::PositiveNumber);
  lm->add_option("--seed", lemma_seed);

  auto* demo = app.add_subcommand("demo", "worked examples");
  demo->require_subcommand(1);
  std::string model = "all";
  int fp = 2;
  auto* fred = demo->add_subcommand("fredholm", "str (x) d^p against e^{(p+1)} on finite models");
  fred->add_option("--model", model, "model name or \"all\"");
  fred->add_option("--p", fp, "even degree");
  RieffelSpec spec;
  std::string ramp = "bump";
  auto* torus = demo->add_subcommand("nctorus", "Powers-Rieffel projection on the noncommutative torus");
  torus->add_option("--theta", spec.theta);
  torus->add_option("--delta", spec.delta);
  torus->add_option("--truncation", spec.truncation);
  torus->add_option("--quadrature", spec.quadrature_points, "0 means 8 * truncation");
  torus->add_option("--ramp", ramp)->check(CLI::IsMember({"bump", "smoothstep"}));
  long circle_n = 1;
  auto* circle = demo->add_subcommand("circle", "winding number of z^n");
  circle->add_option("--n", circle_n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "lrcyc: " << e.what() << "\n";
    return 2;
  }

  try {
    Report r;
    if (*hh) {
      r = run_hh(algebra_file, degree, false, false);
    } else if (*hc) {
      r = run_hh(algebra_file, degree, true, ker_b);
    } else if (*lh) {
      r = run_lie_homology(lr_file, module, algebra_file, degree);
    } else if (*pr) {
      r = run_pair(setup_file, g);
    } else if (*lm) {
      r = run_lemmas(setup_file, samples, lemma_seed.value_or(g.seed), g);
    } else if (*fred) {
      if (model == "all") {
        r = run_fredholm_all(fp);
      } else {
        std::optional<FredholmModel> chosen;
        for (auto& m : standard_fredholm_models())
          if (m.name == model) chosen = m;
        if (!chosen) throw UsageError("unknown Fredholm model '" + model + "'");
        chosen->p = fp;
        r = demo_fredholm(*chosen);
      }
    } else if (*torus) {
      spec.ramp = parse_ramp(ramp);
      r = demo_nctorus(spec);
    } else if (*circle) {
      r = demo_circle(circle_n);
    }
    emit(r, g, out);
    return r.all_pass() ? 0 : 1;
  } catch (const UsageError& e) {
    err << "lrcyc: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "lrcyc: " << e.what() << "\n";
    return 2;
  } catch (const ComputationError& e) {
    err << "lrcyc: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lrcyc
