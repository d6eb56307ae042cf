#pragma once

#include <cstddef>
#include <fstream>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wl1/experiment.hpp"
#include "wl1/index_set.hpp"
#include "wl1/linalg.hpp"
#include "wl1/nsp.hpp"
#include "wl1/problem.hpp"

namespace wl1 {

// %.17g; "inf" / "-inf" / "nan" for non-finite values.
std::string format_double(double v);
// Inverse of format_double. Throws ParseError (line 0) on malformed text.
double parse_double(const std::string& text);

// Opens for reading or writing, throwing IoError on failure.
std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

// First line `rows cols`, then rows·cols values in row-major order, one row
// per line. Vectors are stored as n×1 matrices.
void write_matrix(std::ostream& out, const DenseMatrix& a);
DenseMatrix read_matrix(std::istream& in);
void write_vector(std::ostream& out, const std::vector<double>& v);
std::vector<double> read_vector(std::istream& in);

// `weight <w>` then `indices <i> <j> …` on the next line.
void write_estimate(std::ostream& out, const SupportEstimate& est);
SupportEstimate read_estimate(std::istream& in);

// Line-oriented certificate:
//   mode <name> / k <k> / s <s> / w <w> / C <value>
//   witness <N> / <N values> / T <indices> / S <indices>
void write_certificate(std::ostream& out, const NspCertificate& cert);
NspCertificate read_certificate(std::istream& in);

struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

// `key = value` lines; `#` starts a comment; blank lines ignored.
std::vector<ConfigEntry> parse_config(std::istream& in);

// Applies entries on top of `base`. Recognized keys: preset, N, m_values,
// k_lo, k_hi, k_step, alphas, rho, weight (number or one_minus_alpha),
// trials, seed, threshold, success_tol. `preset` must come first if present.
ExperimentConfig apply_config(ExperimentConfig base, const std::vector<ConfigEntry>& entries);

}  // namespace wl1
