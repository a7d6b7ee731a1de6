#include "rspolar/error.hpp"
#include "rspolar/harness.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

using namespace rspolar;

namespace {

SimConfig small()
{
	SimConfig c;
	c.q = 4;
	c.m = 2;
	c.k_bits = 16;
	c.eb_n0_grid = {0.0, 2.0, 4.0};
	c.max_trials = 3000;
	c.max_block_errors = 0;
	c.seed = 5;
	return c;
}

} // namespace

TEST_CASE("config validation")
{
	auto c = small();
	CHECK_NOTHROW(c.validate());
	CHECK(c.n_bits() == 32);
	CHECK(c.rate() == doctest::Approx(0.5));
	c.k_bits = 15;
	CHECK_THROWS_AS(c.validate(), ConfigError);
	c = small();
	c.k_bits = 34;
	CHECK_THROWS_AS(c.validate(), ConfigError);
	c = small();
	c.eb_n0_grid = {1.0, 1.0};
	CHECK_THROWS_AS(c.validate(), ConfigError);
	c = small();
	c.m_bits = 30;
	CHECK_THROWS_AS(c.validate(), ConfigError);
	c.rate_match = PunctureScheme::Mpwp;
	CHECK_NOTHROW(c.validate());
	c.m_bits = 12;
	CHECK_THROWS_AS(c.validate(), ConfigError);
	c = small();
	c.q = 3;
	CHECK_THROWS_AS(c.validate(), ConfigError);
	c = small();
	c.k_bits = 30;
	c.m_bits = 29;
	c.rate_match = PunctureScheme::Sip;
	CHECK_THROWS_AS(build_setup(c), ConfigError);
	c.m_bits = 30;
	const auto setup = build_setup(c);
	CHECK(setup.pattern.punctured_bits == std::vector<std::size_t>{0, 1});
}

TEST_CASE("noiseless limit has no errors")
{
	auto c = small();
	c.eb_n0_grid = {40.0};
	c.max_trials = 1000;
	const auto r = run_bler(c);
	CHECK(r.points.at(0).trials == 1000);
	CHECK(r.points.at(0).block_errors == 0);
}

TEST_CASE("BLER falls with SNR and is reproducible")
{
	auto c = small();
	const auto a = run_bler(c);
	REQUIRE(a.points.size() == 3);
	CHECK(a.points[0].bler > a.points[1].bler);
	CHECK(a.points[1].bler > a.points[2].bler);
	c.workers = 4;
	CHECK(run_bler(c) == a);
	CHECK(a.rate == doctest::Approx(0.5));
	CHECK(a.construction == "pdpw");
}

TEST_CASE("early stop uses the trials actually run")
{
	auto c = small();
	c.eb_n0_grid = {0.0};
	c.max_block_errors = 25;
	const auto r = run_bler(c);
	CHECK(r.points[0].block_errors == 25);
	CHECK(r.points[0].trials < 3000);
	CHECK(r.points[0].bler == doctest::Approx(25.0 / r.points[0].trials));
	c.workers = 3;
	CHECK(run_bler(c).points[0].trials == r.points[0].trials);
}

TEST_CASE("rate matching in the pipeline")
{
	auto c = small();
	c.rate_match = PunctureScheme::Mpwp;
	c.m_bits = 32;
	auto plain = small();
	CHECK(run_bler(c).points == run_bler(plain).points);
	c.m_bits = 24;
	const auto r = run_bler(c);
	CHECK(r.m_bits == 24);
	CHECK(r.rate == doctest::Approx(16.0 / 24.0));
	CHECK(r.points[2].bler < r.points[0].bler);
}

TEST_CASE("required Eb/N0 interpolation")
{
	SimResult r;
	r.points = {{1.0, 100, 10, 0.1}, {2.0, 1000, 10, 0.01}, {3.0, 1000, 1, 0.001}};
	CHECK(required_eb_n0(r, 0.01) == doctest::Approx(2.0));
	CHECK(required_eb_n0(r, std::sqrt(0.1 * 0.01)) == doctest::Approx(1.5));
	// log10 BLER falls by one per dB between 2 and 3 dB.
	CHECK(required_eb_n0(r, 0.003) == doctest::Approx(2.0 - 2.0 - std::log10(0.003)));
	CHECK_THROWS_AS(required_eb_n0(r, 0.5), ConfigError);
	CHECK_THROWS_AS(required_eb_n0(r, 1e-4), ConfigError);
}

TEST_CASE("comparing constructions")
{
	auto c = small();
	ConstructionConfig a, b;
	a.label = "first";
	b.label = "second";
	const auto cmp = compare_constructions(c, {a, b}, 0.05);
	CHECK(cmp.results[0].points == cmp.results[1].points);
	CHECK(cmp.labels == std::vector<std::string>{"first", "second"});
	CHECK_THROWS_AS(compare_constructions(c, {a}, 0.05), ConfigError);
}

TEST_CASE("output formats")
{
	SimResult r;
	CHECK(result_to_csv(r) == "eb_n0_db,trials,block_errors,bler\n");
	const auto run = run_bler(small());
	const auto csv = result_to_csv(run);
	CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
	CHECK(result_from_json(result_to_json(run)) == run);
	const auto path = (std::filesystem::temp_directory_path() / "rspolar_out.csv").string();
	emit(run, "csv", path);
	CHECK(read_file(path) == csv);
	std::filesystem::remove(path);
	CHECK_THROWS_AS(emit(run, "xml", path), ConfigError);
	CHECK_THROWS_AS(emit(run, "csv", "/nonexistent/dir/out.csv"), IoError);
}

TEST_CASE("config JSON")
{
	const auto c = config_from_json(R"({
		"m": 2, "k_bits": 16,
		"construction": {"method": "mc", "design_ebn0_db": 1.0, "trials": 500, "seed": 3},
		"rate_match": {"scheme": "sip", "mb": 28},
		"ebn0_grid": [0, 1, 2], "max_trials": 100, "seed": 9, "workers": 2
	})");
	CHECK(c.q == 4);
	CHECK(c.construction.method == Method::MonteCarlo);
	CHECK(c.construction.trials == 500);
	CHECK(c.rate_match == PunctureScheme::Sip);
	CHECK(c.m_bits == 28);
	CHECK(c.crc_width == 8);
	const auto back = config_from_json(config_to_json(c));
	CHECK(back.eb_n0_grid == c.eb_n0_grid);
	CHECK(back.construction.design_eb_n0_db == 1.0);
	CHECK(back.seed == 9);
	CHECK_THROWS_AS(config_from_json(R"({"m": 2, "k_bits": 16, "ebn0_grid": [0], "bogus": 1})"), ConfigError);
	CHECK_THROWS_AS(config_from_json(R"({"m": 2, "k_bits": 2000, "ebn0_grid": [0]})"), ConfigError);
	CHECK_THROWS_AS(config_from_json(R"({"m": "two", "k_bits": 16, "ebn0_grid": [0]})"), ConfigError);
	CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), IoError);
}
