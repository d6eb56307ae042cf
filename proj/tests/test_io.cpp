#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "wl1/error.hpp"
#include "wl1/io.hpp"
#include "wl1/problem.hpp"
#include "wl1/random.hpp"

using namespace wl1;

TEST_CASE("doubles print with 17 significant digits and parse back exactly") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::isinf(parse_double("inf")));
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.normal() * std::pow(10.0, rng.normal() * 50);
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK_THROWS_AS(parse_double("1.5x"), ParseError);
  CHECK_THROWS_AS(parse_double(""), ParseError);
}

TEST_CASE("matrix and vector round trip") {
  Rng rng(2);
  const DenseMatrix a = gen_gaussian_matrix(3, 5, rng);
  std::stringstream ss;
  write_matrix(ss, a);
  CHECK(ss.str().substr(0, 4) == "3 5\n");
  CHECK(read_matrix(ss) == a);

  const std::vector<double> v{1.5, -2.25, 1e-300};
  std::stringstream sv;
  write_vector(sv, v);
  CHECK(read_vector(sv) == v);
}

TEST_CASE("matrix parse errors carry line numbers") {
  std::istringstream short_data("2 2\n1 2\n3\n");
  try {
    read_matrix(short_data);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream bad_entry("2 2\n1 2\n3 abc\n");
  try {
    read_matrix(bad_entry);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream trailing("1 1\n1\n2\n");
  CHECK_THROWS_AS(read_matrix(trailing), ParseError);
  std::istringstream neg("-1 2\n");
  CHECK_THROWS_AS(read_matrix(neg), ParseError);
  std::istringstream not_vector("1 2\n1 2\n");
  CHECK_THROWS_AS(read_vector(not_vector), ParseError);
}

TEST_CASE("estimate round trip") {
  const SupportEstimate est{IndexSet{4, 1, 9}, 0.3};
  std::stringstream ss;
  write_estimate(ss, est);
  const auto back = read_estimate(ss);
  CHECK(back.estimate == est.estimate);
  CHECK(back.weight == est.weight);

  std::stringstream empty;
  write_estimate(empty, SupportEstimate{IndexSet{}, 1.0});
  CHECK(read_estimate(empty).estimate.empty());
  std::istringstream bad("weight 2\nindices 1\n");
  CHECK_THROWS_AS(read_estimate(bad), ParseError);
}

TEST_CASE("certificate round trip") {
  NspCertificate c;
  c.mode = NspMode::uniform_star;
  c.k = 2;
  c.s = 1;
  c.weight = 0.4;
  c.optimal_constant = 0.812345678901234567;
  c.witness = {0.1, -0.2, 0.0, 3.0};
  c.witness_T = IndexSet{1, 3};
  c.witness_S = IndexSet{3};
  std::stringstream ss;
  write_certificate(ss, c);
  const auto back = read_certificate(ss);
  CHECK(back.mode == c.mode);
  CHECK(back.k == 2);
  CHECK(back.s == 1);
  CHECK(back.weight == c.weight);
  CHECK(back.optimal_constant == c.optimal_constant);
  CHECK(back.witness == c.witness);
  CHECK(back.witness_T == c.witness_T);
  CHECK(back.witness_S == c.witness_S);

  c.optimal_constant = std::numeric_limits<double>::infinity();
  std::stringstream si;
  write_certificate(si, c);
  CHECK(si.str().find("C inf\n") != std::string::npos);
  CHECK(read_certificate(si).infinite());

  std::istringstream bad("mode uniform\nk 2\ns x\n");
  try {
    read_certificate(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# reduced run\n"
      "preset = full\n"
      "N = 120   # ambient\n"
      "m_values = 20, 40,60\n"
      "alphas = 0.3,1\n"
      "weight = one_minus_alpha\n"
      "trials = 5\n"
      "seed = 0x10\n"
      "\n"
      "threshold = 0.9\n");
  const auto entries = parse_config(in);
  CHECK(entries.size() == 8);
  CHECK(entries[1].line == 3);
  const auto c = apply_config(ExperimentConfig::desk(), entries);
  CHECK(c.N == 120);
  CHECK(c.m_values == std::vector<std::size_t>{20, 40, 60});
  CHECK(c.alphas == std::vector<double>{0.3, 1.0});
  CHECK(c.trials == 5);
  CHECK(c.base_seed == 16);
  CHECK(c.threshold == 0.9);
  CHECK(c.weight_rule == WeightRule::one_minus_alpha);

  std::istringstream fixed("weight = 0.25\n");
  const auto f = apply_config(ExperimentConfig{}, parse_config(fixed));
  CHECK(f.weight_rule == WeightRule::fixed);
  CHECK(f.fixed_weight == 0.25);
}

TEST_CASE("config errors") {
  std::istringstream no_eq("N 100\n");
  CHECK_THROWS_AS(parse_config(no_eq), ParseError);
  std::istringstream unknown("N = 10\nbogus = 1\n");
  try {
    apply_config(ExperimentConfig{}, parse_config(unknown));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream late("N = 10\npreset = desk\n");
  CHECK_THROWS_AS(apply_config(ExperimentConfig{}, parse_config(late)), ParseError);
  std::istringstream bad_list("m_values = 10, x\n");
  CHECK_THROWS_AS(apply_config(ExperimentConfig{}, parse_config(bad_list)), ParseError);
}

TEST_CASE("missing files are I/O errors") {
  CHECK_THROWS_AS(open_input("/nonexistent/dir/file.txt"), IoError);
  CHECK_THROWS_AS(open_output("/nonexistent/dir/file.txt"), IoError);
}
