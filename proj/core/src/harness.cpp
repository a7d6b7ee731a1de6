#include "rspolar/harness.hpp"

#include "rspolar/error.hpp"
#include "parallel.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#ifndef RSPOLAR_VERSION
#define RSPOLAR_VERSION "0.0.0"
#endif

namespace rspolar {

std::string library_version() { return "rspolar " RSPOLAR_VERSION; }

// ---------------------------------------------------------------- config

std::size_t SimConfig::n_symbols() const
{
	std::size_t n = 1;
	for (unsigned k = 0; k < m; ++k)
		n *= q;
	return n;
}

std::size_t SimConfig::n_bits() const { return n_symbols() * static_cast<std::size_t>(std::countr_zero(q)); }

double SimConfig::rate() const { return static_cast<double>(k_bits) / static_cast<double>(transmitted_bits()); }

void SimConfig::validate() const
{
	if (q < 2 || q > 8 || !std::has_single_bit(q))
		throw ConfigError("q must be 2, 4 or 8, got " + std::to_string(q));
	if (m == 0 || n_symbols() > (1u << 20))
		throw ConfigError("m = " + std::to_string(m) + " gives an unsupported length");
	const unsigned t = static_cast<unsigned>(std::countr_zero(q));
	if (k_bits == 0 || k_bits % t)
		throw ConfigError("k_bits must be a positive multiple of t = " + std::to_string(t));
	if (k_bits > n_bits())
		throw ConfigError("k_bits = " + std::to_string(k_bits) + " exceeds N_b = " + std::to_string(n_bits()));
	if (k_bits < crc_width)
		throw ConfigError("k_bits cannot hold the " + std::to_string(crc_width) + "-bit CRC");
	if (list_size == 0)
		throw ConfigError("list_size must be positive");
	if (m_bits > n_bits())
		throw ConfigError("M_b = " + std::to_string(m_bits) + " exceeds N_b = " + std::to_string(n_bits()));
	if (rate_match == PunctureScheme::None && m_bits != 0 && m_bits != n_bits())
		throw ConfigError("M_b < N_b needs a rate-matching scheme");
	if (k_bits > transmitted_bits())
		throw ConfigError("rate K_b/M_b exceeds 1");
	for (std::size_t g = 1; g < eb_n0_grid.size(); ++g)
		if (!(eb_n0_grid[g] > eb_n0_grid[g - 1]))
			throw ConfigError("eb_n0 grid must be strictly increasing");
	if (max_trials == 0)
		throw ConfigError("max_trials must be positive");
	if (workers == 0)
		throw ConfigError("workers must be positive");
}

// ---------------------------------------------------------------- setup

namespace {

RSKernel kernel_for(unsigned q) { return build_rs_kernel(build_field(static_cast<unsigned>(std::countr_zero(q)))); }

} // namespace

ReliabilitySequence build_sequence(const SimConfig &config)
{
	config.validate();
	const auto &c = config.construction;
	if (!c.file.empty()) {
		auto seq = load_sequence(c.file);
		if (seq.q != config.q || seq.m != config.m)
			throw ConfigError("sequence file " + c.file + " is for q=" + std::to_string(seq.q) +
					  ", m=" + std::to_string(seq.m));
		return seq;
	}
	const RSKernel kernel = kernel_for(config.q);
	if (c.method == Method::MonteCarlo) {
		const auto channel = AwgnChannel::from_ebn0(c.design_eb_n0_db, config.rate());
		const auto stats = mc_construct(kernel, config.m, channel, McOptions{c.trials, c.seed, config.workers});
		return build_mc_sequence(stats, config.q, config.m, c.design_eb_n0_db, c.seed);
	}
	ZetaTable zeta;
	if (!c.zeta.empty()) {
		zeta.values = c.zeta;
	} else if (config.q == 4) {
		zeta = ZetaTable::gf4_default();
	} else {
		const auto channel = AwgnChannel::from_ebn0(c.design_eb_n0_db, config.rate());
		zeta = estimate_zeta(kernel, channel, ZetaOptions{c.trials, c.seed, config.workers}).table;
	}
	return build_pdpw_sequence(PdpwConfig{c.beta, zeta, kernel}, config.m);
}

Setup build_setup(const SimConfig &config) { return build_setup(config, build_sequence(config)); }

Setup build_setup(const SimConfig &config, const ReliabilitySequence &sequence)
{
	config.validate();
	const unsigned t = static_cast<unsigned>(std::countr_zero(config.q));
	if (sequence.length() != config.n_symbols())
		throw ConfigError("sequence length does not match the code length");
	auto info = select_info_set(sequence, config.k_bits / t);
	CodeSpec code(kernel_for(config.q), config.m, info, CrcSpec{config.crc_width, config.crc_poly},
		      config.list_size);
	PuncturePattern pattern;
	switch (config.rate_match) {
	case PunctureScheme::Mpwp:
		pattern = mpwp_pattern(sequence, code.info_set(), config.n_bits(), config.transmitted_bits(), t);
		break;
	case PunctureScheme::Sip:
		pattern = sip_pattern(code.info_set(), config.n_symbols(), config.n_bits(), config.transmitted_bits(),
				      t);
		break;
	default:
		pattern = pattern_from_symbols({}, config.n_bits(), config.n_bits(), t);
	}
	return Setup{std::move(code), sequence, std::move(pattern)};
}

// ---------------------------------------------------------------- simulation

namespace {

constexpr std::size_t kBatch = 1024;
constexpr std::size_t kChunk = 16;

bool one_trial(const Setup &setup, const AwgnChannel &channel, ListDecoder &dec, std::uint64_t seed)
{
	const CodeSpec &code = setup.code;
	Rng rng(seed);
	std::vector<std::uint8_t> payload(code.payload_bits());
	for (auto &b : payload)
		b = static_cast<std::uint8_t>(rng() >> 63);
	const auto info = crc_attach(payload, code.crc());
	const auto tx = apply_puncture(encode_codeword(info, code), setup.pattern);
	const auto y = transmit(tx, channel, rng);
	const auto probs = pad_posteriors(y, setup.pattern, channel, code.field());
	const auto res = dec.decode(probs);
	return !res.crc_ok || res.info_bits != info;
}

} // namespace

SimResult run_bler(const SimConfig &config) { return run_bler(config, build_setup(config)); }

SimResult run_bler(const SimConfig &config, const Setup &setup)
{
	config.validate();
	SimResult out;
	out.version = library_version();
	out.seed = config.seed;
	out.rate = config.rate();
	out.k_bits = config.k_bits;
	out.m_bits = config.transmitted_bits();
	out.construction = config.construction.label.empty() ? to_string(setup.sequence.method)
							     : config.construction.label;
	out.rate_match = to_string(config.rate_match);

	for (std::size_t g = 0; g < config.eb_n0_grid.size(); ++g) {
		const auto start = std::chrono::steady_clock::now();
		const auto channel = AwgnChannel::from_ebn0(config.eb_n0_grid[g], out.rate);
		SimPoint pt;
		pt.eb_n0_db = config.eb_n0_grid[g];
		bool stop = false;
		std::vector<std::uint8_t> failed;
		for (std::size_t first = 0; first < config.max_trials && !stop; first += kBatch) {
			const std::size_t count = std::min(kBatch, config.max_trials - first);
			failed.assign(count, 0);
			detail::for_each_chunk(count, kChunk, config.workers,
					       [&](std::size_t, std::size_t begin, std::size_t end) {
						       ListDecoder dec(setup.code);
						       for (std::size_t k = begin; k < end; ++k)
							       failed[k] = one_trial(setup, channel, dec,
										     derive_seed(config.seed, g, first + k));
					       });
			// Scan in trial order so the stopping point is the same for any worker count.
			for (std::size_t k = 0; k < count; ++k) {
				++pt.trials;
				pt.block_errors += failed[k];
				if (config.max_block_errors && pt.block_errors >= config.max_block_errors) {
					stop = true;
					break;
				}
			}
		}
		pt.bler = static_cast<double>(pt.block_errors) / static_cast<double>(pt.trials);
		pt.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		out.points.push_back(pt);
	}
	return out;
}

double required_eb_n0(const SimResult &result, double target_bler)
{
	if (!(target_bler > 0.0 && target_bler < 1.0))
		throw ConfigError("target BLER must lie in (0, 1)");
	const auto &p = result.points;
	for (std::size_t k = 0; k + 1 < p.size(); ++k) {
		const double a = p[k].bler, b = p[k + 1].bler;
		if (a == target_bler)
			return p[k].eb_n0_db;
		if (a > target_bler && b <= target_bler) {
			if (b == target_bler)
				return p[k + 1].eb_n0_db;
			if (b == 0.0)
				break;
			const double la = std::log10(a), lb = std::log10(b), lt = std::log10(target_bler);
			return p[k].eb_n0_db + (la - lt) / (la - lb) * (p[k + 1].eb_n0_db - p[k].eb_n0_db);
		}
	}
	if (!p.empty() && p.back().bler == target_bler)
		return p.back().eb_n0_db;
	throw ConfigError("target BLER " + std::to_string(target_bler) + " is not bracketed by the grid");
}

Comparison compare_constructions(const SimConfig &config, const std::vector<ConstructionConfig> &methods,
				 double target_bler)
{
	if (methods.size() < 2)
		throw ConfigError("compare_constructions needs at least two constructions");
	Comparison cmp;
	for (const auto &m : methods) {
		SimConfig c = config;
		c.construction = m;
		auto res = run_bler(c);
		cmp.labels.push_back(res.construction);
		try {
			cmp.required_db.push_back(required_eb_n0(res, target_bler));
		} catch (const ConfigError &) {
			cmp.required_db.push_back(std::nullopt);
		}
		cmp.results.push_back(std::move(res));
	}
	return cmp;
}

// ---------------------------------------------------------------- output

std::string result_to_csv(const SimResult &result)
{
	std::ostringstream os;
	os.precision(17);
	os << "eb_n0_db,trials,block_errors,bler\n";
	for (const auto &p : result.points)
		os << p.eb_n0_db << ',' << p.trials << ',' << p.block_errors << ',' << p.bler << '\n';
	return os.str();
}

std::string read_file(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw IoError("cannot open " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_file(const std::string &path, const std::string &text)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw IoError("cannot write " + path);
	out << text;
	if (!out)
		throw IoError("write failed: " + path);
}

void emit(const SimResult &result, const std::string &format, const std::string &path)
{
	if (format == "csv")
		write_file(path, result_to_csv(result));
	else if (format == "json")
		write_file(path, result_to_json(result));
	else
		throw ConfigError("unknown output format '" + format + "' (expected csv or json)");
}

SimConfig load_config(const std::string &path) { return config_from_json(read_file(path)); }

} // namespace rspolar
