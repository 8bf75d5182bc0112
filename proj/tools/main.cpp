#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>

#include "confun/io.hpp"
#include "confun/invariants.hpp"
#include "confun/polyops.hpp"
#include "confun/selfcheck.hpp"
#include "confun/witness.hpp"

namespace {

using namespace confun;

constexpr int kExitPass = 0;
constexpr int kExitObstruction = 1;
constexpr int kExitInput = 2;
constexpr int kExitVerification = 3;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void render_euler(Report& rep, int indent, const EulerConditions& c) {
  rep.line(indent, "euler_conditions");
  auto row = [&](const char* k, bool v) {
    rep.line(indent + 1, k, v ? "pass" : "fail");
  };
  row("one", c.one);
  row("phi_beta", c.phi_beta);
  row("phi_gamma", c.phi_gamma);
  row("beta_gamma", c.beta_gamma);
  row("phi_beta_gamma", c.phi_beta_gamma);
}

void render_ak(Report& rep, int indent, const AkNumbers& ak) {
  rep.line(indent, "depth2_parities");
  rep.line(indent + 1, "chi", std::to_string(ak.chi_parity));
  const char* names[4] = {"phi_beta", "phi_gamma", "beta_gamma",
                          "phi_beta_gamma"};
  for (int i = 0; i < 4; ++i)
    rep.line(indent + 1, names[i], std::to_string(ak.integral_parity[i]));
}

void render_nonzero(Report& rep, int indent, const NonzeroReport& nz) {
  rep.line(indent, "mode", mode_name(nz.mode));
  rep.line(indent, "enumerated", nz.enumerated ? "yes" : "no (above budget)");
  if (nz.enumerated) {
    rep.line(indent, "nonzero_count", std::to_string(nz.nonzero_count));
    rep.line(indent, "capped", nz.capped ? "yes" : "no");
    if (!nz.nonzero.empty()) {
      rep.line(indent, "nonzero");
      for (const CharIndex& idx : nz.nonzero)
        rep.line(indent + 1, idx.str(), idx.novel() ? "novel" : "depth2");
    }
  }
  rep.line(indent, "odd_mask_multiset");
  for (const auto& [mask, count] : nz.mask_multiset) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%llx",
                  static_cast<unsigned long long>(mask));
    rep.line(indent + 1, buf, "x " + std::to_string(count));
  }
}

void render_link_report(Report& rep, int indent, const LinkReport& lr) {
  rep.line(indent, "integral", lr.integral ? "yes" : "no");
  render_euler(rep, indent, lr.euler);
  if (lr.ak) render_ak(rep, indent, *lr.ak);
  if (lr.base_nonzero) {
    rep.line(indent, "char_numbers");
    render_nonzero(rep, indent + 1, *lr.base_nonzero);
  }
  if (lr.ext_nonzero) render_nonzero(rep, indent + 1, *lr.ext_nonzero);
  rep.line(indent, "link_verdict", lr.pass ? "pass" : "obstruction");
}

int cmd_check(const std::string& path, const std::string& mode_str,
              std::uint64_t cap, bool timing) {
  Timer timer;
  const ProfileMode mode = parse_mode(mode_str);
  ComplexFile file = ComplexFile::load(path);
  auto K = std::make_shared<const Complex>(file.build());
  Report rep;
  rep.kv("report", "check");
  rep.kv("input", path);
  if (!file.name.empty()) rep.kv("name", file.name);
  rep.kv("mode", mode_name(mode));
  rep.kv("dim", std::to_string(K->dim()));
  rep.kv("simplices", std::to_string(K->size()));
  bool pass = false;
  if (K->dim() <= 3) {
    rep.kv("chi", std::to_string(euler_characteristic(*K)));
    LinkReport lr = link_battery(K, mode, cap);
    render_link_report(rep, 0, lr);
    pass = lr.pass;
  } else {
    SpaceReport sr = check_space(K, cap);
    pass = sr.pass;
    std::size_t failed = 0;
    for (const auto& v : sr.verdicts)
      if (!v.report.pass) ++failed;
    rep.kv("links_checked", std::to_string(sr.verdicts.size()));
    rep.kv("links_failed", std::to_string(failed));
    if (failed) {
      rep.line(0, "failed_links");
      std::size_t shown = 0;
      for (const auto& v : sr.verdicts) {
        if (v.report.pass) continue;
        if (++shown > 20) {
          rep.line(1, "...", "");
          break;
        }
        std::string at;
        for (VertexId w : v.at.vertices())
          at += (at.empty() ? "" : " ") + std::to_string(w);
        rep.line(1, "simplex " + at);
        render_link_report(rep, 2, v.report);
      }
    }
  }
  rep.kv("verdict", pass ? "pass" : "obstruction");
  if (timing) rep.kv("timing_ms", std::to_string(timer.ms()));
  std::cout << rep.str();
  return pass ? kExitPass : kExitObstruction;
}

int cmd_charnum(const std::string& path, const std::string& index,
                bool timing) {
  Timer timer;
  const CharIndex idx = CharIndex::parse(index);
  ComplexFile file = ComplexFile::load(path);
  auto K = std::make_shared<const Complex>(file.build());
  BaseProfile profile = base_profile(K, idx.mode);
  Report rep;
  rep.kv("report", "charnum");
  rep.kv("input", path);
  rep.kv("index", idx.str());
  rep.kv("novel", idx.novel() ? "yes" : "no");
  if (!profile.integral) {
    rep.kv("integral", "no");
    rep.kv("note", profile.integrality_note);
    rep.kv("verdict", "obstruction");
    if (timing) rep.kv("timing_ms", std::to_string(timer.ms()));
    std::cout << rep.str();
    return kExitObstruction;
  }
  const int parity = char_number(profile, idx);
  rep.kv("parity", std::to_string(parity));
  rep.kv("verdict", parity == 0 ? "pass" : "obstruction");
  if (timing) rep.kv("timing_ms", std::to_string(timer.ms()));
  std::cout << rep.str();
  return parity == 0 ? kExitPass : kExitObstruction;
}

int cmd_charnums(const std::string& path, const std::string& mode_str,
                 std::uint64_t cap, bool timing) {
  Timer timer;
  const ProfileMode mode = parse_mode(mode_str);
  ComplexFile file = ComplexFile::load(path);
  auto K = std::make_shared<const Complex>(file.build());
  BaseProfile profile = base_profile(K, mode);
  Report rep;
  rep.kv("report", "charnums");
  rep.kv("input", path);
  if (!profile.integral) {
    rep.kv("integral", "no");
    rep.kv("note", profile.integrality_note);
    rep.kv("verdict", "obstruction");
    if (timing) rep.kv("timing_ms", std::to_string(timer.ms()));
    std::cout << rep.str();
    return kExitObstruction;
  }
  NonzeroReport nz = nonzero_char_numbers(profile, mode, cap);
  render_nonzero(rep, 0, nz);
  const bool pass = nz.enumerated && nz.nonzero.empty();
  rep.kv("verdict", pass ? "pass" : "obstruction");
  if (timing) rep.kv("timing_ms", std::to_string(timer.ms()));
  std::cout << rep.str();
  return pass ? kExitPass : kExitObstruction;
}

int cmd_witness(const std::string& index, const std::string& out_path,
                bool timing) {
  Timer timer;
  WitnessResult w;
  std::string name;
  if (index == "chi") {
    w = generate_witness_chi();
    name = "witness-chi";
  } else {
    const CharIndex idx = CharIndex::parse(index);
    w = generate_witness(idx);
    name = "witness-" + idx.str();
    for (char& ch : name)
      if (ch == ':') ch = '-';
  }
  ComplexFile file = ComplexFile::from_complex(name, *w.complex);
  file.meta.emplace_back("index", index);
  for (std::size_t i = 0; i < w.provenance.size(); ++i)
    file.meta.emplace_back("stage" + std::to_string(i), w.provenance[i]);
  file.save(out_path);
  Report rep;
  rep.kv("report", "witness");
  rep.kv("index", index);
  rep.kv("output", out_path);
  rep.kv("simplices", std::to_string(w.complex->size()));
  rep.kv("dim", std::to_string(w.complex->dim()));
  rep.kv("verified", "yes");
  if (timing) rep.kv("timing_ms", std::to_string(timer.ms()));
  std::cout << rep.str();
  return kExitPass;
}

int cmd_poly(const std::string& action, const std::string& coeffs,
             bool timing) {
  Timer timer;
  const RationalPolynomial P = RationalPolynomial::parse(coeffs);
  Report rep;
  rep.kv("report", "poly");
  rep.kv("action", action);
  rep.kv("coefficients", P.str());
  if (action == "check") {
    const bool member = in_script_P(P);
    if (member != in_script_P_recursive(P))
      throw VerificationError("membership routes disagree");
    rep.kv("in_operator_ring", member ? "yes" : "no");
  } else if (action == "decompose") {
    auto dec = binomial_decompose(P);
    if (!dec) {
      rep.kv("integer_valued", "no");
    } else {
      rep.kv("integer_valued", "yes");
      rep.line(0, "binomial_coefficients");
      for (std::size_t p = 0; p < dec->n.size(); ++p)
        rep.line(1, "n" + std::to_string(p), dec->n[p].str());
    }
  } else if (action == "mod8") {
    Mod8Reduction red = mod8_reduce(P);
    const char* names[6] = {"1", "t", "t2-t", "t3-t", "p4", "p5"};
    rep.line(0, "generator_coordinates");
    for (int i = 0; i < 6; ++i) rep.line(1, names[i], red.coords[i].str());
    rep.kv("residual", red.residual.str());
  } else {
    throw ParseError("unknown poly action '" + action + "'");
  }
  if (timing) rep.kv("timing_ms", std::to_string(timer.ms()));
  std::cout << rep.str();
  return kExitPass;
}

int cmd_selftest(int size, std::uint64_t seed, bool timing) {
  Timer timer;
  selfcheck::Options opt;
  opt.size = size;
  opt.seed = seed;
  bool pass = true;
  for (const auto& outcome : selfcheck::run_all(opt)) {
    std::cout << (outcome.pass() ? "[pass] " : "[FAIL] ") << outcome.name
              << " (" << outcome.checks << " checks)\n";
    for (const auto& msg : outcome.failures) std::cout << "   - " << msg << "\n";
    pass = pass && outcome.pass();
  }
  if (timing) std::cout << "timing_ms: " << timer.ms() << "\n";
  return pass ? kExitPass : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "confun: a calculus of constructible functions on finite simplicial\n"
      "complexes, the local characteristic-number battery through ambient\n"
      "dimension 4, and generators for its independence witnesses.\n"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "append elapsed time to reports");

  std::string check_file, check_mode = "extended";
  std::uint64_t check_cap = confun::kDefaultEnumerationCap;
  auto* check = app.add_subcommand(
      "check", "run the full obstruction battery on a complex (dim <= 4)");
  check->add_option("file", check_file)->required();
  check->add_option("--mode", check_mode, "base | extended");
  check->add_option("--cap", check_cap, "enumeration cap for nonzero indices");

  std::string cn_file, cn_index;
  auto* charnum = app.add_subcommand(
      "charnum", "parity of one characteristic number (index mode:hexmask)");
  charnum->add_option("file", cn_file)->required();
  charnum->add_option("--index", cn_index)->required();

  std::string cns_file, cns_mode = "extended";
  std::uint64_t cns_cap = confun::kDefaultEnumerationCap;
  bool cns_nonzero = false;
  auto* charnums =
      app.add_subcommand("charnums", "enumerate nonzero characteristic numbers");
  charnums->add_option("file", cns_file)->required();
  charnums->add_flag("--nonzero", cns_nonzero,
                     "list the nonzero indices (always on)");
  charnums->add_option("--mode", cns_mode, "base | extended");
  charnums->add_option("--cap", cns_cap, "enumeration cap");

  std::string w_index, w_out;
  auto* witness = app.add_subcommand(
      "witness", "generate a verified witness complex for an index (or chi)");
  witness->add_option("--index", w_index)->required();
  witness->add_option("-o,--output", w_out)->required();

  std::string p_action, p_coeffs;
  auto* poly = app.add_subcommand(
      "poly", "operator-ring membership / decomposition / mod-8 reduction");
  poly->add_option("action", p_action, "check | decompose | mod8")->required();
  poly->add_option("coeffs", p_coeffs, "exact coefficients c0,c1/2,...")
      ->required();

  int st_size = 25;
  std::uint64_t st_seed = 0x5eed;
  auto* selftest =
      app.add_subcommand("selftest", "run the randomized property suites");
  selftest->add_option("--size", st_size, "corpus size knob");
  selftest->add_option("--seed", st_seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return cmd_check(check_file, check_mode, check_cap, timing);
    if (charnum->parsed()) return cmd_charnum(cn_file, cn_index, timing);
    if (charnums->parsed())
      return cmd_charnums(cns_file, cns_mode, cns_cap, timing);
    if (witness->parsed()) return cmd_witness(w_index, w_out, timing);
    if (poly->parsed()) return cmd_poly(p_action, p_coeffs, timing);
    if (selftest->parsed()) return cmd_selftest(st_size, st_seed, timing);
  } catch (const confun::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const confun::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const confun::Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitPass;
}
