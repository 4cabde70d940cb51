#include <cmath>
#include <random>

#include "doctest.h"
#include "tcqsim/config.hpp"
#include "tcqsim/error.hpp"

using namespace tcqsim;
using config::Command;
using config::RunConfig;

TEST_CASE("minimal zz-sweep config resolves to the reference device") {
  const auto cfg = config::parse_config("[sweep]\n", Command::zz_sweep);
  const auto& left = std::get<circuit::TcqSpec>(cfg.device.left);
  CHECK(left.c1 == 45e-15);
  CHECK(left.c2 == 45e-15);
  CHECK(left.cs == 20e-15);
  CHECK(left.charge_cutoff == 8);
  CHECK(left.keep_levels == 8);
  CHECK(cfg.device.bus.frequency == 6e9);
  CHECK(cfg.device.bus.fock_dim == 5);
  CHECK(cfg.device.gint_left == config::defaults::tcq_gint);
  CHECK(cfg.sweep.chi_half_target == 1e6);
  CHECK(cfg.sweep.detuning_start == -400e6);
  CHECK(cfg.sweep.detuning_stop == 400e6);
  CHECK(cfg.sweep.detuning_step == 10e6);
  CHECK(cfg.sweep.calibrate);
  CHECK(cfg.convention == PrefactorConvention::standard);
}

TEST_CASE("transmon-baseline defaults to transmon subsystems") {
  const auto cfg = config::parse_config("[sweep]\n", Command::transmon_baseline);
  const auto& left = std::get<circuit::TransmonSpec>(cfg.device.left);
  CHECK(left.c == 70e-15);
  CHECK(cfg.device.gint_left == config::defaults::transmon_gint);
  CHECK(cfg.sweep.ej_bracket_lo == config::defaults::transmon_ej_bracket_lo);
  CHECK(cfg.sweep.ej_bracket_hi == config::defaults::transmon_ej_bracket_hi);
}

TEST_CASE("empty config is rejected with the required section named") {
  try {
    config::parse_config("", Command::zz_sweep);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("[sweep]") != std::string::npos);
  }
  CHECK_THROWS_AS(config::parse_config("# only comments\n", Command::rip),
                  ConfigError);
}

TEST_CASE("unknown keys and sections carry line numbers") {
  try {
    config::parse_config("[sweep]\nasymmetry = 0.1\nbogus = 3\n",
                         Command::zz_sweep);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(config::parse_config("[nope]\n", Command::zz_sweep),
                  ConfigError);
  CHECK_THROWS_AS(
      config::parse_config("[sweep]\nnot_a_kv_line\n", Command::zz_sweep),
      ConfigError);
  CHECK_THROWS_AS(config::parse_config("x = 1\n", Command::zz_sweep),
                  ConfigError);
  CHECK_THROWS_AS(config::parse_config("[sweep]\nasymmetry =\n",
                                       Command::zz_sweep),
                  ConfigError);
}

TEST_CASE("units are mandatory on physical values") {
  CHECK_THROWS_AS(
      config::parse_config("[sweep]\n[left]\nc1 = 45\n", Command::zz_sweep),
      ConfigError);
  try {
    config::parse_config("[sweep]\n[left]\nc1 = 45 GHz\n", Command::zz_sweep);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("capacitance") != std::string::npos);
    CHECK(e.line() == 3);
  }
  // Dimensionless values take bare numbers.
  const auto cfg = config::parse_config("[sweep]\nasymmetry = 0.05\n",
                                        Command::zz_sweep);
  CHECK(cfg.sweep.asymmetry == 0.05);
}

TEST_CASE("unit suffixes convert into canonical SI") {
  const auto cfg = config::parse_config(
      "[sweep]\ndetuning_start = -200 MHz\ndetuning_stop = 200 MHz\n"
      "detuning_step = 100 kHz\n"
      "[left]\nc1 = 0.045 pF\nej1 = 9 GHz\n"
      "[bus]\nfrequency = 6000 MHz\n"
      "[rip]\nduration = 250 ns\nedge_time = 0.1 us\n",
      Command::zz_sweep);
  const auto& left = std::get<circuit::TcqSpec>(cfg.device.left);
  CHECK(left.c1 == doctest::Approx(45e-15).epsilon(1e-12));
  CHECK(left.ej1 == 9e9);
  CHECK(cfg.device.bus.frequency == 6e9);
  CHECK(cfg.sweep.detuning_step == doctest::Approx(1e5).epsilon(1e-12));
  CHECK(cfg.rip.duration == doctest::Approx(250e-9).epsilon(1e-12));
  CHECK(cfg.rip.edge_time == doctest::Approx(100e-9).epsilon(1e-12));
}

TEST_CASE("numerics overrides propagate to all charge-basis builders") {
  const auto cfg = config::parse_config(
      "[sweep]\n[numerics]\ncharge_cutoff = 10\nkeep_levels = 9\nfock_dim = 7\n",
      Command::zz_sweep);
  const auto& left = std::get<circuit::TcqSpec>(cfg.device.left);
  const auto& right = std::get<circuit::TcqSpec>(cfg.device.right);
  CHECK(left.charge_cutoff == 10);
  CHECK(right.charge_cutoff == 10);
  CHECK(left.keep_levels == 9);
  CHECK(cfg.device.bus.fock_dim == 7);
}

TEST_CASE("mixed subsystem kinds") {
  const auto cfg = config::parse_config(
      "[device]\nleft = transmon\nright = tcq\n"
      "[left]\nc = 60 fF\nej = 12 GHz\n"
      "[right]\nej1 = 8 GHz\nej2 = 9 GHz\n",
      Command::spectrum);
  CHECK(std::get<circuit::TransmonSpec>(cfg.device.left).c ==
        doctest::Approx(60e-15).epsilon(1e-12));
  CHECK(std::get<circuit::TcqSpec>(cfg.device.right).ej2 == 9e9);
  CHECK(cfg.device.gint_left == config::defaults::transmon_gint);
  CHECK(cfg.device.gint_right == config::defaults::tcq_gint);
  // tcq keys on a transmon side are rejected
  CHECK_THROWS_AS(config::parse_config("[device]\nleft = transmon\n"
                                       "[left]\nc1 = 45 fF\n",
                                       Command::spectrum),
                  ConfigError);
}

TEST_CASE("grids") {
  const auto cfg = config::parse_config("[sweep]\n", Command::zz_sweep);
  const auto grid = cfg.sweep.grid();
  CHECK(grid.size() == 81);
  CHECK(grid.front() == -400e6);
  CHECK(grid.back() == doctest::Approx(400e6).epsilon(1e-12));

  config::RamseyBlock rb;
  rb.tau_start = 0;
  rb.tau_stop = 100e-9;
  rb.tau_step = 25e-9;
  CHECK(rb.grid().size() == 5);
  rb.tau_step = -1e-9;
  CHECK_THROWS_AS(rb.grid(), InvalidParameter);
}

TEST_CASE("serialize/parse round-trips exactly") {
  auto base = config::parse_config("[sweep]\n", Command::zz_sweep);
  base.sweep.asymmetry = 0.0731;
  base.sweep.detuning_start = -123.456e6;
  base.device.gint_left = 5.4321e11;
  std::get<circuit::TcqSpec>(base.device.right).ej1 = 8.76543219876e9;
  base.rip.amplitude = 1.25e6;
  base.output_path = "out/some file.csv";

  const std::string text = config::serialize_config(base);
  const auto reparsed = config::parse_config(text, Command::zz_sweep);
  CHECK(reparsed == base);

  auto tb = config::parse_config("[sweep]\n", Command::transmon_baseline);
  std::get<circuit::TransmonSpec>(tb.device.left).ng = -0.173;
  const auto tb2 = config::parse_config(config::serialize_config(tb),
                                        Command::transmon_baseline);
  CHECK(tb2 == tb);
}

TEST_CASE("format_double round-trips arbitrary doubles") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int t = 0; t < 500; ++t) {
    const double v = std::ldexp(mant(rng), expo(rng));
    const std::string s = config::format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(config::format_double(0.0) == "0");
  CHECK(config::format_double(1e6) == "1e+06");
}

TEST_CASE("command names round-trip") {
  for (auto c : {Command::spectrum, Command::chi, Command::zz_sweep,
                 Command::transmon_baseline, Command::calibrate, Command::rip,
                 Command::ramsey})
    CHECK(config::parse_command(config::command_name(c)) == c);
  CHECK_THROWS_AS(config::parse_command("bogus"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
  const auto cfg = config::parse_config(
      "# header comment\n\n[sweep]\n  asymmetry = 0.02  # trailing\n\n",
      Command::zz_sweep);
  CHECK(cfg.sweep.asymmetry == 0.02);
}

TEST_CASE("convention switch") {
  const auto cfg = config::parse_config(
      "[device]\nconvention = literal-pi\n", Command::spectrum);
  CHECK(cfg.convention == PrefactorConvention::literal_pi);
  CHECK_THROWS_AS(
      config::parse_config("[device]\nconvention = what\n", Command::spectrum),
      ConfigError);
}
