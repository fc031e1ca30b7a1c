#include "qwle/verify.hpp"

#include <algorithm>

#include "qwle/errors.hpp"

namespace qwle {

void VerifyConfig::validate() const {
  if (hursts.empty()) throw DomainError("verify: the H list is empty");
  for (double h : hursts) {
    if (!(h > 0.0 && h < 1.0)) throw DomainError("verify: H must lie in (0,1)");
  }
  for (int j : js) {
    if (j != 0 && j != 1) throw DomainError("verify: j must be 0 or 1");
  }
  if (ns.size() < 2) throw DomainError("verify: at least two dimensions are needed for a slope");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 2 || ns[i] > kDenseCap) throw DomainError("verify: n outside [2, 1024]");
    if (i > 0 && ns[i] <= ns[i - 1]) throw DomainError("verify: ns must be strictly increasing");
  }
}

bool VerifyEntry::pass() const {
  const bool rates = std::all_of(rate_fits.begin(), rate_fits.end(), [](const FormRates& f) {
    return f.single.pass() && f.sandwich.pass();
  });
  return rates && (!has_frobenius || frobenius.pass());
}

bool VerifyReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const VerifyEntry& e) { return e.pass(); });
}

VerifyReport run_verify(const VerifyConfig& config) {
  config.validate();
  VerifyReport report;
  report.config = config;
  for (double h : config.hursts) {
    const SpectralModel model(h, config.spectral);
    VerifyEntry entry;
    entry.hurst = h;
    for (int j : config.js) entry.rate_fits.push_back(quadratic_form_rates(model, j, config.ns));
    if (config.frobenius) {
      entry.has_frobenius = true;
      entry.frobenius = frobenius_rates(model, config.ns);
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace qwle
