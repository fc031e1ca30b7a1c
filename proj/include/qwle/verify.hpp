#pragma once

#include <cstddef>
#include <vector>

#include "qwle/toeplitz.hpp"

namespace qwle {

struct VerifyConfig {
  std::vector<double> hursts;
  std::vector<int> js{0, 1};
  std::vector<std::size_t> ns{64, 128, 256, 512};
  bool frobenius = true;
  SpectralConfig spectral{};

  /// DomainError on an empty H list, j outside {0, 1}, or ns not strictly increasing within kDenseCap.
  void validate() const;
};

struct VerifyEntry {
  double hurst = 0.5;
  std::vector<FormRates> rate_fits;
  bool has_frobenius = false;
  FrobeniusFit frobenius;

  bool pass() const;
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<VerifyEntry> entries;

  bool pass() const;
};

VerifyReport run_verify(const VerifyConfig& config);

}  // namespace qwle
