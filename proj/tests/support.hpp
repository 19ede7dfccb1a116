#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wt1/classifier.hpp"

namespace testing_support {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& name) { return std::string(WT1_FIXTURE_DIR) + "/" + name; }

inline wt1::NewformRecord load_fixture(const std::string& name) { return wt1::parse_record(read_file(fixture(name))); }

// q prod_{n >= 1} (1 - q^n)(1 - q^{23 n}), coefficients 0..M.
inline std::vector<long> eta_product_23(long M) {
  std::vector<long> c(static_cast<std::size_t>(M + 1), 0);
  if (M >= 1) c[1] = 1;
  auto mul_factor = [&](long k) {
    for (long i = M; i >= k; --i) c[i] -= c[i - k];
  };
  for (long n = 1; n <= M; ++n) {
    mul_factor(n);
    if (23 * n <= M) mul_factor(23 * n);
  }
  return c;
}

inline wt1::NewformRecord level23_record(long M) {
  const wt1::ImaginaryQuadraticField K(-23);
  return wt1::dihedral_record(wt1::enumerate_hecke_characters(-23, K.unit_ideal()).at(0), M);
}

}  // namespace testing_support
