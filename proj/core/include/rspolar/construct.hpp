#pragma once

#include "rspolar/channel.hpp"
#include "rspolar/kernel.hpp"
#include "rspolar/porder.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rspolar {

/// Intra-layer correction factors zeta(0..q-1).
struct ZetaTable {
	std::vector<double> values;
	std::optional<double> design_eb_n0_db;
	std::optional<double> design_rate;
	std::size_t n_samples = 0;

	/// GF(4) defaults at Eb/N0 = -1.8 dB, back-solved from the published
	/// beta thresholds: zeta(1) = 2 - 2/1.55, zeta(2) = 2 / (1.437 log2 3).
	static ZetaTable gf4_default();
	bool monotone() const;
};

/// How the genie-aided mutual information in the zeta ratio is obtained.
enum class GenieMode {
	/// Simulate the genie channel of each index through its coset-leader row.
	CosetLeader,
	/// Use the last sub-channel (which needs no genie) as the reference for every index.
	LastSubchannel,
};

struct ZetaOptions {
	std::size_t trials = 100000;
	std::uint64_t seed = 1;
	unsigned workers = 1;
	GenieMode mode = GenieMode::CosetLeader;
};

/// Per-index mutual information of the single-kernel sub-channels and of
/// their genie-aided counterparts, plus the clamped ratio with the
/// endpoints pinned to 0 and 1.
struct ZetaEstimate {
	ZetaTable table;
	std::vector<double> subchannel_mi;
	std::vector<double> genie_mi;
	std::vector<double> raw_ratio;
};

/// Throws NumericError if a genie mutual information vanishes.
ZetaEstimate estimate_zeta(const RSKernel &kernel, const AwgnChannel &channel, const ZetaOptions &opt = {});

struct PdpwConfig {
	double beta = 1.512;
	ZetaTable zeta;
	RSKernel kernel;

	/// Throws ConfigError unless beta > 1 and zeta has q entries in [0, 1].
	void validate() const;
};

/// w(i) = sum_k zeta(i_k) beta^k log2 D_{i_k}.
double pdpw_weight(std::uint32_t i, const PdpwConfig &config, unsigned m);

/// Open interval of beta; upper may be +infinity.
struct BetaInterval {
	double lower = 1.0;
	double upper = std::numeric_limits<double>::infinity();

	bool bounded() const { return upper < std::numeric_limits<double>::infinity(); }
	bool contains(double beta) const { return beta > lower && beta < upper; }
	double width() const { return upper - lower; }
};

/// Values of beta > 1 where w(i) > w(j), as disjoint increasing intervals.
/// Throws ConfigError when i and j are comparable under the partial order.
std::vector<BetaInterval> beta_threshold(std::uint32_t i, std::uint32_t j, const std::vector<double> &zeta,
					 const RSKernel &kernel, unsigned m);

/// "better is more reliable than worse", as observed by simulation.
struct PairDirection {
	std::uint32_t better;
	std::uint32_t worse;
};

struct BetaFit {
	BetaInterval interval;
	double chosen = 0.0;
	bool consistent = true;
	std::vector<PairDirection> conflicts;
};

/// Intersects the beta sets implied by each direction. The chosen beta is the
/// midpoint of a bounded interval, or lower + 0.5 when the interval is open
/// above. If the constraints cannot all hold, returns the widest interval
/// satisfying the most of them, consistent = false and the violated pairs.
BetaFit fit_beta(const std::vector<double> &zeta, const RSKernel &kernel, const std::vector<PairDirection> &directions);

/// Genie-aided first-error statistics per synthetic sub-channel.
struct GenieStats {
	std::size_t trials = 0;
	std::vector<std::size_t> errors;

	double error_rate(std::uint32_t i) const;
};

struct McOptions {
	std::size_t trials = 10000;
	std::uint64_t seed = 1;
	unsigned workers = 1;
};

/// Random messages over all N inputs, genie-aided SC; counts wrong argmax
/// decisions per index.
GenieStats mc_construct(const RSKernel &kernel, unsigned m, const AwgnChannel &channel, const McOptions &opt = {});

/// Directions for incomparable pairs whose error rates differ by at least
/// min_z standard errors.
std::vector<PairDirection> resolve_directions(const GenieStats &stats, const PartialOrder &order, double min_z = 3.0);

/// beta fitted against genie-aided simulations at N = q^2 .. q^m_max.
BetaFit fit_beta_mc(const std::vector<double> &zeta, const RSKernel &kernel, unsigned m_max,
		    const AwgnChannel &channel, const McOptions &opt = {}, double min_z = 3.0);

enum class Method { Pdpw, MonteCarlo };
std::string to_string(Method m);
Method method_from_string(const std::string &s);

struct ReliabilitySequence {
	unsigned q = 0;
	unsigned m = 0;
	Method method = Method::Pdpw;
	std::optional<double> beta;
	std::vector<double> zeta;
	std::optional<double> design_eb_n0_db;
	std::optional<std::uint64_t> seed;
	std::vector<double> weights; // larger is more reliable
	std::vector<std::uint32_t> order; // most reliable first

	std::size_t length() const { return weights.size(); }
};

ReliabilitySequence build_pdpw_sequence(const PdpwConfig &config, unsigned m);
/// Weights are negated error rates.
ReliabilitySequence build_mc_sequence(const GenieStats &stats, unsigned q, unsigned m,
				      std::optional<double> design_eb_n0_db = {}, std::optional<std::uint64_t> seed = {});

/// Indices sorted by decreasing weight; equal weights put the larger index
/// first, which also respects the partial order (a dominating index is never smaller).
std::vector<std::uint32_t> order_by_weight(const std::vector<double> &weights);

/// First K entries of the order.
std::vector<std::uint32_t> select_info_set(const ReliabilitySequence &seq, std::size_t k);

std::string sequence_to_json(const ReliabilitySequence &seq);
ReliabilitySequence sequence_from_json(const std::string &text);
void save_sequence(const ReliabilitySequence &seq, const std::string &path);
ReliabilitySequence load_sequence(const std::string &path);

} // namespace rspolar
