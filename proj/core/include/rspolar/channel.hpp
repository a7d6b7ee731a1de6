#pragma once

#include "rspolar/galois.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rspolar {

using Rng = std::mt19937_64;

/// Mixes a master seed with stream coordinates (grid point, trial index, ...)
/// into an independent generator seed. Results never depend on which worker
/// draws the trial.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// BPSK over real AWGN: bit 0 -> +1, bit 1 -> -1.
struct AwgnChannel {
	double noise_variance = 1.0;
	double eb_n0_db = 0.0;
	double rate = 1.0;

	/// sigma^2 = 1 / (2 R 10^{Eb/N0 / 10}), R counted in bits (CRC included).
	static AwgnChannel from_ebn0(double eb_n0_db, double rate);
	static AwgnChannel with_variance(double noise_variance);
};

/// y_j = (1 - 2 bit_j) + n_j.
std::vector<double> transmit(std::span<const std::uint8_t> bits, const AwgnChannel &channel, Rng &rng);
void transmit(std::span<const std::uint8_t> bits, const AwgnChannel &channel, Rng &rng, std::span<double> y);

/// Normalised probability vector over GF(q).
struct SymbolPosterior {
	std::vector<double> probs;

	/// Throws NumericError unless entries are nonnegative and sum to 1 within tol.
	void check(double tol = 1e-9) const;
};

/// Posterior of one symbol from its t received values (uniform prior).
/// A received value of exactly 0 carries no information (LLR 0), which is how
/// punctured bits are represented.
SymbolPosterior symbol_posteriors(std::span<const double> y, const AwgnChannel &channel, const FieldSpec &field);
void symbol_posteriors(std::span<const double> y, const AwgnChannel &channel, const FieldSpec &field,
		       std::span<double> probs);

/// Posteriors of every symbol of a received word of length t*N, written
/// into N*q doubles.
void word_posteriors(std::span<const double> y, const AwgnChannel &channel, const FieldSpec &field,
		     std::span<double> probs);

/// Running average of log2 q + sum_eta p(eta) log2 p(eta) over posterior samples.
class MutualInfoAccumulator {
public:
	explicit MutualInfoAccumulator(unsigned q) : q_(q) {}
	void add(std::span<const double> probs);
	void merge(const MutualInfoAccumulator &other);
	std::size_t count() const { return n_; }
	/// Clamped to [0, log2 q]; throws NumericError when empty.
	double value() const;

private:
	unsigned q_;
	std::size_t n_ = 0;
	double sum_ = 0.0;
};

/// Mutual information estimate from posterior samples under a uniform input.
double estimate_I(std::span<const SymbolPosterior> samples);

/// Monte-Carlo Bhattacharyya parameter of the q-ary symbol channel induced by
/// BPSK/AWGN: average over x != x' of E_{y|x} sqrt(W(y|x') / W(y|x)).
double estimate_Z(const AwgnChannel &channel, const FieldSpec &field, std::size_t n_samples, Rng &rng);
/// Row-major q x q matrix of Z_{x,x'}; the diagonal is 1.
std::vector<double> estimate_Z_pairwise(const AwgnChannel &channel, const FieldSpec &field, std::size_t n_samples,
					Rng &rng);

/// P_e(W) <= (q-1) Z(W).
double pe_bound(double z, unsigned q);

} // namespace rspolar
