#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "gch/chcoh.hpp"
#include "gch/polyvec.hpp"
#include "gch/sparse.hpp"
#include "gch/verify.hpp"

namespace {

using namespace gch;

struct RunConfig {
  int d = 3;
  int kmax = 3;
  int Nmax = 4;
  int nmax = 4;
  std::uint64_t seed = 7;
  int trials = 50;
  std::string suite = "all";
  std::string format;  // per-command default when empty
  std::string out;
  int level = 1;
  std::string source = "polyvec";
  std::string part = "ch";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
}

std::string format_or(const RunConfig& cfg, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw UsageError("format " + f + " is not available for this command");
}

chcoh::Truncation truncation(const RunConfig& cfg) { return {cfg.d, cfg.kmax, cfg.Nmax, cfg.nmax}; }

int cmd_verify(const RunConfig& cfg) {
  const std::string fmt = format_or(cfg, "text", {"text", "json"});
  if (!verify::known_suite(cfg.suite)) throw UsageError("unknown suite: " + cfg.suite);
  if (cfg.trials < 1) throw UsageError("--trials must be positive");
  const verify::Options opt{cfg.seed, cfg.trials};
  const auto r = verify::run(cfg.suite, opt);
  emit(cfg, fmt == "json" ? verify::report_json(r, cfg.suite, opt) : verify::report_text(r, cfg.suite, opt));
  return verify::all_pass(r) ? 0 : 1;
}

int cmd_dims(const RunConfig& cfg) {
  const std::string fmt = format_or(cfg, "text", {"text", "json"});
  if (cfg.d < 1) throw UsageError("--d must be at least 1");
  if (cfg.kmax < 0) throw UsageError("--kmax must be nonnegative");
  const int kmax = std::min(cfg.kmax, cfg.d);
  std::vector<long> comps;
  long total = 0;
  for (int k = 0; k <= kmax; ++k) {
    comps.push_back(polyvec::basis_count(cfg.d, k));
    total += comps.back();
  }
  const genv::HSpace H(polyvec::GerstAlgebra::from_polyvec(cfg.d, kmax));
  std::vector<long> quot;
  for (int n = 1; n <= cfg.nmax; ++n) quot.push_back(H.quotient().dim_total(n));
  std::ostringstream s;
  if (fmt == "json") {
    nlohmann::json q = nlohmann::json::array();
    for (int n = 1; n <= cfg.nmax; ++n) q.push_back({{"n", n}, {"dim", quot[n - 1]}});
    const nlohmann::json j = {{"d", cfg.d}, {"kmax", kmax}, {"components", comps}, {"total", total}, {"quotient", q}};
    s << j.dump(2) << "\n";
  } else {
    s << "homogeneous polyvector fields on R^" << cfg.d << ", tensor degree k <= " << kmax << "\n";
    for (int k = 0; k <= kmax; ++k) s << "k=" << k << " " << comps[k] << "\n";
    s << "total " << total << "\n";
    s << "shuffle quotient of tensor length n over these letters\n";
    for (int n = 1; n <= cfg.nmax; ++n) s << "n=" << n << " " << quot[n - 1] << "\n";
  }
  emit(cfg, s.str());
  return 0;
}

int cmd_cocycle(const RunConfig& cfg) {
  const std::string fmt = format_or(cfg, "json", {"text", "json"});
  bool ok = false;
  std::string json;
  try {
    json = chcoh::cocycle_report_json(truncation(cfg), &ok);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  if (fmt == "json") {
    emit(cfg, json + "\n");
  } else {
    const auto j = nlohmann::json::parse(json);
    std::ostringstream s;
    s << "f3_111((x1 d2)(x2 d3)(x3 d1)) = " << j["value"].get<std::string>() << "\n";
    s << "cocycle: " << (j["cocycle"].get<bool>() ? "true" : "false") << "\n";
    s << "coboundary: " << (j["coboundary"].get<bool>() ? "true" : "false") << "\n";
    s << "system: " << j["system"]["rows"] << " x " << j["system"]["cols"] << "\n";
    s << "checked shapes:";
    for (const auto& sh : j["checked_shapes"]) {
      s << " ";
      for (const auto& p : sh) s << p.get<int>();
    }
    s << "\n";
    emit(cfg, s.str());
  }
  return ok ? 0 : 1;
}

int cmd_differential(const RunConfig& cfg) {
  const std::string fmt = format_or(cfg, "matrixmarket", {"matrixmarket", "json"});
  chcoh::Part part;
  if (cfg.part == "ch")
    part = chcoh::Part::All;
  else if (cfg.part == "m")
    part = chcoh::Part::M;
  else if (cfg.part == "ell")
    part = chcoh::Part::Ell;
  else
    throw UsageError("part must be ch, m or ell");
  if (cfg.level < 1) throw UsageError("level must be at least 1");
  if (cfg.d < 1) throw UsageError("--d must be at least 1");
  polyvec::GerstAlgebra src = polyvec::GerstAlgebra::reals(), tgt = src;
  chcoh::LetterMap f1;
  if (cfg.source == "polyvec") {
    src = polyvec::GerstAlgebra::from_polyvec(cfg.d, cfg.kmax);
    f1 = chcoh::constant_term(src);
  } else if (cfg.source == "sandbox") {
    Rng rng(cfg.seed);
    src = tgt = polyvec::GerstAlgebra::sandbox(rng);
    f1 = chcoh::identity_map(src);
  } else if (cfg.source == "zero") {
    src = tgt = polyvec::GerstAlgebra::zero_sandbox();
    f1 = chcoh::identity_map(src);
  } else {
    throw UsageError("source must be polyvec, sandbox or zero");
  }
  const genv::HSpace H(std::move(src));
  const ginfty::GInfty S(H);
  const chcoh::Complex C(S, std::move(tgt), std::move(f1), cfg.Nmax, cfg.nmax);
  SparseMat m;
  try {
    m = C.assemble(cfg.level, part);
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  emit(cfg, fmt == "json" ? to_json_triplets(m) + "\n" : to_matrix_market(m));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the G-infinity enveloping bicoalgebra of a Gerstenhaber algebra"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--d", cfg.d, "dimension of R^d")->capture_default_str();
  app.add_option("--kmax", cfg.kmax, "largest polyvector tensor degree")->capture_default_str();
  app.add_option("--Nmax", cfg.Nmax, "largest level (total number of letters)")->capture_default_str();
  app.add_option("--nmax", cfg.nmax, "largest number of packets")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed of the randomized suites")->capture_default_str();
  app.add_option("--trials", cfg.trials, "random instances per identity")->capture_default_str();
  app.add_option("--suite", cfg.suite, "shuffle|tensorco|symco|genv|ginfty|chcoh|all|corrupted")->capture_default_str();
  app.add_option("--format", cfg.format, "json|matrixmarket|text")
      ->check(CLI::IsMember({"json", "matrixmarket", "text"}));
  app.add_option("--out", cfg.out, "write the report to this file instead of stdout");

  auto* verify = app.add_subcommand("verify", "check the algebraic identities on seeded random inputs");
  auto* dims = app.add_subcommand("dims", "dimensions of the polyvector components and shuffle quotients");
  auto* cocycle = app.add_subcommand("cocycle", "evaluate f3_111 and decide cocycle and coboundary");
  auto* diff = app.add_subcommand("differential", "export the matrix of d_CH from a level to the next");
  diff->add_option("level", cfg.level, "source level N")->required();
  diff->add_option("source", cfg.source, "polyvec (into R), sandbox or zero (identity maps)");
  diff->add_option("part", cfg.part, "ch, m or ell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (verify->parsed()) return cmd_verify(cfg);
    if (dims->parsed()) return cmd_dims(cfg);
    if (cocycle->parsed()) return cmd_cocycle(cfg);
    if (diff->parsed()) return cmd_differential(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
