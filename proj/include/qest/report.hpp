#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qest/montecarlo.hpp"
#include "qest/validation.hpp"

namespace qest {

enum class OutputFormat { kCsv, kJson };

// Shortest round-trip decimal form, locale independent.
std::string format_number(double x);

// experiment,k,n,m,eps,trials,seed,estimate,std_error,reference,provenance
// One row for the estimate and, when present, one row carrying the
// reference value with its own provenance.
void write_reports(std::ostream& out, const std::vector<ErrorReport>& reports, OutputFormat format);

// lemma_id,lhs,rhs,abs_diff,tolerance,pass
void write_checks(std::ostream& out, const std::vector<LemmaCheckResult>& checks, OutputFormat format);

// sampler_a,sampler_b,k,n,trials,seed,statistic,p_value,critical_value,pass
void write_ks(std::ostream& out, const KsOutcome& outcome, OutputFormat format);

}  // namespace qest
