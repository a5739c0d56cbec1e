#include <doctest.h>

#include <sstream>

#include "satqr/errors.hpp"
#include "satqr/io.hpp"

using namespace satqr;

TEST_SUITE("io") {

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "e_m = 0.0   # trailing\n"
      "\n"
      "eta_mem=0.5\n"
      "deviation_log = \"binary\"\n"
      "p_d_total = 1e-5\n"
      "one_memory_ex_noise_term = true\n");
  const SystemParams p = load_config(in);
  CHECK(p.e_m == 0.0);
  CHECK(p.eta_mem == 0.5);
  CHECK(p.deviation_log == LogBase::binary);
  REQUIRE(p.p_d_total);
  CHECK(*p.p_d_total == 1e-5);
  CHECK(p.one_memory_ex_noise_term);
  CHECK(p.eta_det == SystemParams{}.eta_det);
}

TEST_CASE("config errors carry line numbers") {
  auto fails_with = [](const char* text, const char* needle) {
    std::istringstream in(text);
    try {
      load_config(in);
    } catch (const InvalidInput& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_with("e_m = 0\nbogus = 1\n", "line 2"));
  CHECK(fails_with("e_m = 0\nbogus = 1\n", "bogus"));
  CHECK(fails_with("e_m 0\n", "line 1"));
  CHECK(fails_with("eta_det = abc\n", "eta_det"));
  CHECK(fails_with("eta_det = 0.5x\n", "eta_det"));
  CHECK(fails_with("final_term_log = ten\n", "final_term_log"));
  CHECK(fails_with("eta_det = 1.5\n", "eta_det"));
  CHECK_THROWS_AS(load_config_file("/nonexistent/satqr.toml"), InvalidInput);
}

TEST_CASE("describe_params round-trips through set_param") {
  SystemParams p;
  p.e_m = 0.0123456789012345;
  p.p_d_total = 3.3e-6;
  p.final_term_log = LogBase::natural;
  SystemParams q;
  for (const auto& [k, v] : describe_params(p)) set_param(q, k, v);
  CHECK(describe_params(q) == describe_params(p));
  CHECK(q.e_m == p.e_m);

  set_param(q, "p_d_total", "none");
  CHECK_FALSE(q.p_d_total);
}

TEST_CASE("format_sig6") {
  CHECK(format_sig6(19222.02689) == "19222");
  CHECK(format_sig6(0.0363457382997639) == "0.0363457");
  CHECK(format_sig6(1e-7) == "1e-07");
  CHECK(format_sig6(0.0) == "0");
}

}  // TEST_SUITE
