#pragma once

#include <string>
#include <vector>

namespace skl::verify {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double residual = 0.0;   // measured figure of merit
  double threshold = 0.0;  // acceptance level it was compared against
  std::string detail;
};

std::vector<std::string> suite_names();

// Runs one named suite ("matkit", "siegel", "arithmetic", "enumeration",
// "volumes", "kernel", "hua") or "all". Deterministic for a fixed seed.
std::vector<PropertyResult> run_suite(const std::string& suite, unsigned long long seed = 42,
                                      int threads = 0);

}  // namespace skl::verify
