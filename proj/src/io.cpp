#include "wl1/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "wl1/error.hpp"

namespace wl1 {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text.empty()) throw ParseError("empty number", 0);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError("bad number '" + text + "'", 0);
  }
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading: " + std::strerror(errno));
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  return out;
}

namespace {

// Whitespace-separated tokens with the line each came from.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& token) {
    while (!(line_stream_ >> token)) {
      std::string line;
      if (!std::getline(in_, line)) return false;
      ++line_;
      line_stream_.clear();
      line_stream_.str(line);
    }
    return true;
  }

  std::string expect(const char* what) {
    std::string t;
    if (!next(t)) throw ParseError(std::string("unexpected end of input, expected ") + what, line_);
    return t;
  }

  double real(const char* what) {
    const std::string t = expect(what);
    try {
      return parse_double(t);
    } catch (const ParseError&) {
      throw ParseError(std::string("bad ") + what + " '" + t + "'", line_);
    }
  }

  std::size_t count(const char* what) {
    const std::string t = expect(what);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE) {
      throw ParseError(std::string("bad ") + what + " '" + t + "'", line_);
    }
    return static_cast<std::size_t>(v);
  }

  void keyword(const char* word) {
    const std::string t = expect(word);
    if (t != word) throw ParseError(std::string("expected '") + word + "', got '" + t + "'", line_);
  }

  // Remaining tokens of the current line.
  std::vector<std::string> rest_of_line() {
    std::vector<std::string> out;
    std::string t;
    while (line_stream_ >> t) out.push_back(t);
    return out;
  }

  void expect_end() {
    std::string t;
    if (next(t)) throw ParseError("trailing content '" + t + "'", line_);
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::istringstream line_stream_;
  std::size_t line_ = 0;
};

IndexSet parse_indices(TokenReader& r, const std::vector<std::string>& tokens) {
  std::vector<std::size_t> idx;
  for (const auto& t : tokens) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE) {
      throw ParseError("bad index '" + t + "'", r.line());
    }
    idx.push_back(static_cast<std::size_t>(v));
  }
  return IndexSet(std::move(idx));
}

void write_indices(std::ostream& out, const char* label, const IndexSet& s) {
  out << label;
  for (std::size_t i : s) out << ' ' << i;
  out << '\n';
}

DenseMatrix read_matrix_body(TokenReader& r) {
  const std::size_t rows = r.count("row count");
  const std::size_t cols = r.count("column count");
  std::vector<double> values;
  values.reserve(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    const double v = r.real("matrix entry");
    if (!std::isfinite(v)) throw ParseError("non-finite matrix entry", r.line());
    values.push_back(v);
  }
  return DenseMatrix(rows, cols, std::move(values));
}

}  // namespace

void write_matrix(std::ostream& out, const DenseMatrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out << (j ? " " : "") << format_double(a(i, j));
    }
    out << '\n';
  }
}

DenseMatrix read_matrix(std::istream& in) {
  TokenReader r(in);
  DenseMatrix a = read_matrix_body(r);
  r.expect_end();
  return a;
}

void write_vector(std::ostream& out, const std::vector<double>& v) {
  write_matrix(out, DenseMatrix(v.size(), 1, v));
}

std::vector<double> read_vector(std::istream& in) {
  const DenseMatrix a = read_matrix(in);
  if (a.cols() != 1) throw ParseError("expected a column vector (n 1)", 1);
  return a.column(0);
}

void write_estimate(std::ostream& out, const SupportEstimate& est) {
  out << "weight " << format_double(est.weight) << '\n';
  write_indices(out, "indices", est.estimate);
}

SupportEstimate read_estimate(std::istream& in) {
  TokenReader r(in);
  SupportEstimate est;
  r.keyword("weight");
  est.weight = r.real("weight");
  if (!(est.weight >= 0.0 && est.weight <= 1.0)) throw ParseError("weight outside [0,1]", r.line());
  r.keyword("indices");
  est.estimate = parse_indices(r, r.rest_of_line());
  r.expect_end();
  return est;
}

void write_certificate(std::ostream& out, const NspCertificate& cert) {
  out << "mode " << to_string(cert.mode) << '\n';
  out << "k " << cert.k << '\n';
  out << "s " << cert.s << '\n';
  out << "w " << format_double(cert.weight) << '\n';
  out << "C " << format_double(cert.optimal_constant) << '\n';
  out << "witness " << cert.witness.size() << '\n';
  for (std::size_t i = 0; i < cert.witness.size(); ++i) {
    out << (i ? " " : "") << format_double(cert.witness[i]);
  }
  out << '\n';
  write_indices(out, "T", cert.witness_T);
  write_indices(out, "S", cert.witness_S);
}

NspCertificate read_certificate(std::istream& in) {
  TokenReader r(in);
  NspCertificate cert;
  r.keyword("mode");
  const std::string mode = r.expect("mode name");
  try {
    cert.mode = parse_nsp_mode(mode);
  } catch (const ArgumentError&) {
    throw ParseError("unknown mode '" + mode + "'", r.line());
  }
  r.keyword("k");
  cert.k = r.count("k");
  r.keyword("s");
  cert.s = r.count("s");
  r.keyword("w");
  cert.weight = r.real("w");
  r.keyword("C");
  cert.optimal_constant = r.real("C");
  r.keyword("witness");
  const std::size_t n = r.count("witness length");
  cert.witness.resize(n);
  for (auto& v : cert.witness) v = r.real("witness entry");
  r.keyword("T");
  cert.witness_T = parse_indices(r, r.rest_of_line());
  r.keyword("S");
  cert.witness_S = parse_indices(r, r.rest_of_line());
  r.expect_end();
  return cert;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(value);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double entry_real(const ConfigEntry& e) {
  try {
    return parse_double(e.value);
  } catch (const ParseError&) {
    throw ParseError("bad number for '" + e.key + "': '" + e.value + "'", e.line);
  }
}

std::uint64_t entry_u64(const ConfigEntry& e, const std::string& text) {
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 0);
  if (text.empty() || text[0] == '-' || end != text.c_str() + text.size() || errno == ERANGE) {
    throw ParseError("bad integer for '" + e.key + "': '" + text + "'", e.line);
  }
  return v;
}

}  // namespace

std::vector<ConfigEntry> parse_config(std::istream& in) {
  std::vector<ConfigEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    ConfigEntry e{trim(body.substr(0, eq)), trim(body.substr(eq + 1)), line_no};
    if (e.key.empty()) throw ParseError("missing key", line_no);
    if (e.value.empty()) throw ParseError("missing value for '" + e.key + "'", line_no);
    out.push_back(std::move(e));
  }
  return out;
}

ExperimentConfig apply_config(ExperimentConfig c, const std::vector<ConfigEntry>& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const ConfigEntry& e = entries[i];
    if (e.key == "preset") {
      if (i != 0) throw ParseError("'preset' must be the first entry", e.line);
      try {
        c = ExperimentConfig::preset(e.value);
      } catch (const ArgumentError& err) {
        throw ParseError(err.what(), e.line);
      }
    } else if (e.key == "N") {
      c.N = entry_u64(e, e.value);
    } else if (e.key == "m_values") {
      c.m_values.clear();
      for (const auto& item : split_list(e.value)) c.m_values.push_back(entry_u64(e, item));
    } else if (e.key == "k_lo") {
      c.k_lo = entry_real(e);
    } else if (e.key == "k_hi") {
      c.k_hi = entry_real(e);
    } else if (e.key == "k_step") {
      c.k_step = entry_u64(e, e.value);
    } else if (e.key == "alphas") {
      c.alphas.clear();
      for (const auto& item : split_list(e.value)) {
        c.alphas.push_back(entry_real(ConfigEntry{e.key, item, e.line}));
      }
    } else if (e.key == "rho") {
      c.rho = entry_real(e);
    } else if (e.key == "weight") {
      if (e.value == "one_minus_alpha") {
        c.weight_rule = WeightRule::one_minus_alpha;
      } else {
        c.weight_rule = WeightRule::fixed;
        c.fixed_weight = entry_real(e);
      }
    } else if (e.key == "trials") {
      c.trials = entry_u64(e, e.value);
    } else if (e.key == "seed") {
      c.base_seed = entry_u64(e, e.value);
    } else if (e.key == "threshold") {
      c.threshold = entry_real(e);
    } else if (e.key == "success_tol") {
      c.success_tol = entry_real(e);
    } else {
      throw ParseError("unknown key '" + e.key + "'", e.line);
    }
  }
  return c;
}

}  // namespace wl1
