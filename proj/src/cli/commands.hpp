#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli/report.hpp"
#include "lndlab/kernelsearch.hpp"
#include "lndlab/rigidity.hpp"

namespace lndlab::cli {

/// Parses `args` (without the program name), runs one command and writes
/// its report to `out`. Diagnostics go to `err`. Returns the exit code:
/// 0 success, 1 verification failure, 2 unknown command or invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ReproduceOptions {
  std::string out_dir;
  unsigned n_max = 3;
  std::vector<unsigned> exponents = {25, 25, 25, 25, 25, 25};
};

/// Runs the full pipeline for the seven-variable example ring, writes one
/// JSON report per step plus summary.json into `out_dir`, and returns the
/// summary report.
Report reproduce_pipeline(const ReproduceOptions& opts);

Json certificate_json(const RigidityCertificate& cert);
Json kernel_element_json(unsigned n, const KernelElement& el, const KernelGrading& g);
Json membership_json(const MembershipResult& m, const MonomialOrder& order);
Json escape_json(const EscapeReport& rep, const RingContext& ctx);

/// "XV^n escapes F_n(A)+(x,y,z)^2" style one-liner.
std::string escape_headline(const EscapeReport& rep);

}  // namespace lndlab::cli
