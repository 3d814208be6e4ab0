#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gch::verify {

struct Options {
  std::uint64_t seed = 7;
  int trials = 50;
};

// One identity checked on `instances` random inputs.
struct Outcome {
  std::string suite;
  std::string identity;
  int instances = 0;
  int failures = 0;
  std::string counterexample;  // first failing input, empty if none
  bool pass() const { return failures == 0 && instances > 0; }
};

// shuffle, tensorco, symco, genv, ginfty, chcoh.
const std::vector<std::string>& suite_names();
// The names above, "all", and "corrupted" (the genv identities on an
// algebra whose bracket breaks Jacobi, expected to fail).
bool known_suite(const std::string& name);

// Runs every identity of the suite. Each identity draws from its own
// generator, seeded from the run seed and the identity name, so results
// do not depend on which other identities run or in which order. Checks
// are spread over hardware threads; the result order is fixed. Throws
// std::invalid_argument for an unknown suite.
std::vector<Outcome> run(const std::string& suite, const Options& opt);

bool all_pass(const std::vector<Outcome>& r);
// One line per identity: "PASS suite/identity n/n" or "FAIL ... first
// counterexample: ...".
std::string report_text(const std::vector<Outcome>& r, const std::string& suite, const Options& opt);
// {"suite", "seed", "trials", "pass", "results": [{"suite", "identity",
// "instances", "failures", "pass", "counterexample"}]}
std::string report_json(const std::vector<Outcome>& r, const std::string& suite, const Options& opt);

}  // namespace gch::verify
