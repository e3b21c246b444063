#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hill/criteria.hpp"
#include "hill/diagnostics.hpp"
#include "hill/oracle.hpp"
#include "hill/series.hpp"
#include "hill/spectrum.hpp"

namespace hill {

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t h);

// %.17g; non-finite values print as nan / inf / -inf
std::string fmt_double(double x);

// Every writer starts with the config hash: a "# config_hash=..." line for
// CSV, a leading "config_hash" key for JSON.
void write_spectrum_csv(std::ostream& os, const std::string& hash, const NormalSystem& ns,
                        bool gnuplot = false);
void write_oracle_csv(std::ostream& os, const std::string& hash,
                      const std::vector<OraclePair>& pairs, bool gnuplot = false);
// lambda-grid scan of the discriminant
void write_discriminant_csv(std::ostream& os, const std::string& hash,
                            const std::vector<Discriminant>& scan, bool gnuplot = false);

struct AgreementRow {
  int n = 0;
  int member = 0;  // 0 for lambda_plus, 1 for lambda_minus
  cplx galerkin, oracle;
};
// pairs the members of both sides by (Re, Im) order
std::vector<AgreementRow> agreement_rows(const NormalSystem& ns,
                                         const std::vector<OraclePair>& oracle);
void write_agreement_csv(std::ostream& os, const std::string& hash,
                         const std::vector<AgreementRow>& rows, bool gnuplot = false);

struct SeriesRow {
  SeriesBundle bundle;
  bool has_residual = false;
  cplx residual;
};
void write_series_csv(std::ostream& os, const std::string& hash,
                      const std::vector<SeriesRow>& rows, bool gnuplot = false);

void write_criteria_json(std::ostream& os, const std::string& hash,
                         const std::vector<CriterionReport>& reports);

void write_diagnostics_csv(std::ostream& os, const std::string& hash,
                           const std::vector<NormalEigenPair>& pairs, Window w,
                           bool gnuplot = false);
void write_gram_json(std::ostream& os, const std::string& hash, const GramReport& g);

}  // namespace hill
