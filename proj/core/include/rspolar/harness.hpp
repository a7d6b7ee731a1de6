#pragma once

#include "rspolar/codec.hpp"
#include "rspolar/construct.hpp"
#include "rspolar/ratematch.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rspolar {

struct ConstructionConfig {
	Method method = Method::Pdpw;
	std::string label;
	// pdpw
	double beta = 1.512;
	std::vector<double> zeta; // empty: GF(4) default, else estimated at the design point
	// mc (and zeta estimation)
	double design_eb_n0_db = 0.0;
	std::size_t trials = 20000;
	std::uint64_t seed = 1;
	// load a saved sequence instead
	std::string file;
};

struct SimConfig {
	unsigned q = 4;
	unsigned m = 4;
	std::size_t k_bits = 0; // information bits, CRC included
	unsigned crc_width = 8;
	std::uint32_t crc_poly = 0x07;
	unsigned list_size = 2;
	ConstructionConfig construction;
	PunctureScheme rate_match = PunctureScheme::None;
	std::size_t m_bits = 0; // 0: N_b
	std::vector<double> eb_n0_grid;
	std::size_t max_trials = 100000;
	std::size_t max_block_errors = 100;
	std::uint64_t seed = 1;
	unsigned workers = 1;

	std::size_t n_symbols() const;
	std::size_t n_bits() const;
	std::size_t transmitted_bits() const { return m_bits ? m_bits : n_bits(); }
	double rate() const;
	/// Throws ConfigError on anything the pipeline cannot run.
	void validate() const;
};

/// Everything a simulation needs that does not depend on Eb/N0.
struct Setup {
	CodeSpec code;
	ReliabilitySequence sequence;
	PuncturePattern pattern;
};

ReliabilitySequence build_sequence(const SimConfig &config);
Setup build_setup(const SimConfig &config);
Setup build_setup(const SimConfig &config, const ReliabilitySequence &sequence);

struct SimPoint {
	double eb_n0_db = 0.0;
	std::size_t trials = 0;
	std::size_t block_errors = 0;
	double bler = 0.0;
	double wall_time_s = 0.0;

	bool operator==(const SimPoint &o) const
	{
		return eb_n0_db == o.eb_n0_db && trials == o.trials && block_errors == o.block_errors && bler == o.bler;
	}
};

struct SimResult {
	std::string version;
	std::uint64_t seed = 0;
	double rate = 0.0;
	std::size_t k_bits = 0;
	std::size_t m_bits = 0;
	std::string construction;
	std::string rate_match;
	std::vector<SimPoint> points;

	bool operator==(const SimResult &o) const = default;
};

/// Trial seeds depend only on (seed, grid index, trial index), so two runs
/// with the same seed see the same messages and noise.
SimResult run_bler(const SimConfig &config);
SimResult run_bler(const SimConfig &config, const Setup &setup);

/// Eb/N0 where the BLER curve crosses target, by linear interpolation of
/// log10 BLER between grid points. Throws ConfigError if not bracketed.
double required_eb_n0(const SimResult &result, double target_bler);

struct Comparison {
	std::vector<std::string> labels;
	std::vector<SimResult> results;
	std::vector<std::optional<double>> required_db;
};

/// Paired-seed runs of one config under each construction.
Comparison compare_constructions(const SimConfig &config, const std::vector<ConstructionConfig> &methods,
				 double target_bler);

std::string result_to_csv(const SimResult &result);
std::string result_to_json(const SimResult &result);
SimResult result_from_json(const std::string &text);
void emit(const SimResult &result, const std::string &format, const std::string &path);

SimConfig config_from_json(const std::string &text);
std::string config_to_json(const SimConfig &config);
SimConfig load_config(const std::string &path);

std::string library_version();

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &text);

} // namespace rspolar
