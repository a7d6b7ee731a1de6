#include "rspolar/channel.hpp"

#include "rspolar/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rspolar {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
	x += 0x9e3779b97f4a7c15ull;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
	return x ^ (x >> 31);
}

// Log-likelihood (up to a constant) of every symbol given its t received values.
void symbol_loglik(std::span<const double> y, double inv_two_var, const FieldSpec &field, std::span<double> ll)
{
	const unsigned t = field.t();
	for (unsigned s = 0; s < field.q(); ++s) {
		double acc = 0.0;
		for (unsigned b = 0; b < t; ++b) {
			const double x = field.bit(static_cast<Symbol>(s), b) ? -1.0 : 1.0;
			const double d = y[b] - x;
			acc -= d * d * inv_two_var;
		}
		ll[s] = acc;
	}
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b)
{
	return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xd1b54a32d192ed03ull));
}

AwgnChannel AwgnChannel::from_ebn0(double eb_n0_db, double rate)
{
	if (!(rate > 0.0 && rate <= 1.0))
		throw ConfigError("channel: rate must be in (0, 1], got " + std::to_string(rate));
	AwgnChannel ch;
	ch.eb_n0_db = eb_n0_db;
	ch.rate = rate;
	ch.noise_variance = 1.0 / (2.0 * rate * std::pow(10.0, eb_n0_db / 10.0));
	return ch;
}

AwgnChannel AwgnChannel::with_variance(double noise_variance)
{
	if (!(noise_variance >= 0.0))
		throw ConfigError("channel: noise variance must be nonnegative");
	AwgnChannel ch;
	ch.noise_variance = noise_variance;
	ch.rate = 1.0;
	ch.eb_n0_db = 10.0 * std::log10(1.0 / (2.0 * noise_variance));
	return ch;
}

void transmit(std::span<const std::uint8_t> bits, const AwgnChannel &channel, Rng &rng, std::span<double> y)
{
	std::normal_distribution<double> noise(0.0, std::sqrt(channel.noise_variance));
	for (std::size_t j = 0; j < bits.size(); ++j) {
		const double x = bits[j] ? -1.0 : 1.0;
		y[j] = channel.noise_variance > 0.0 ? x + noise(rng) : x;
	}
}

std::vector<double> transmit(std::span<const std::uint8_t> bits, const AwgnChannel &channel, Rng &rng)
{
	std::vector<double> y(bits.size());
	transmit(bits, channel, rng, y);
	return y;
}

void SymbolPosterior::check(double tol) const
{
	double sum = 0.0;
	for (double p : probs) {
		if (!(p >= 0.0))
			throw NumericError("posterior: negative or NaN entry");
		sum += p;
	}
	if (std::abs(sum - 1.0) > tol)
		throw NumericError("posterior: not normalised (sum " + std::to_string(sum) + ")");
}

void symbol_posteriors(std::span<const double> y, const AwgnChannel &channel, const FieldSpec &field,
		       std::span<double> probs)
{
	if (y.size() != field.t())
		throw DomainError("symbol_posteriors: expected " + std::to_string(field.t()) + " received values");
	const double var = channel.noise_variance;
	const unsigned q = field.q();
	if (var == 0.0) {
		// Noiseless: hard decision per bit, 0 stays uninformative.
		std::fill(probs.begin(), probs.end(), 0.0);
		unsigned hits = 0;
		for (unsigned s = 0; s < q; ++s) {
			bool ok = true;
			for (unsigned b = 0; b < field.t() && ok; ++b) {
				const double x = field.bit(static_cast<Symbol>(s), b) ? -1.0 : 1.0;
				ok = y[b] == 0.0 || (y[b] > 0.0) == (x > 0.0);
			}
			if (ok) {
				probs[s] = 1.0;
				++hits;
			}
		}
		for (auto &p : probs)
			p /= hits;
		return;
	}
	const double inv_two_var = std::isinf(var) ? 0.0 : 1.0 / (2.0 * var);
	symbol_loglik(y, inv_two_var, field, probs);
	const double top = *std::max_element(probs.begin(), probs.end());
	double sum = 0.0;
	for (auto &p : probs) {
		p = std::exp(p - top);
		sum += p;
	}
	if (!(sum > 0.0) || !std::isfinite(sum))
		throw NumericError("symbol_posteriors: likelihoods vanished");
	for (auto &p : probs)
		p /= sum;
}

SymbolPosterior symbol_posteriors(std::span<const double> y, const AwgnChannel &channel, const FieldSpec &field)
{
	SymbolPosterior out{std::vector<double>(field.q())};
	symbol_posteriors(y, channel, field, out.probs);
	return out;
}

void word_posteriors(std::span<const double> y, const AwgnChannel &channel, const FieldSpec &field,
		     std::span<double> probs)
{
	const unsigned t = field.t();
	const unsigned q = field.q();
	const std::size_t n = y.size() / t;
	if (y.size() % t != 0 || probs.size() != n * q)
		throw DomainError("word_posteriors: size mismatch");
	for (std::size_t j = 0; j < n; ++j)
		symbol_posteriors(y.subspan(j * t, t), channel, field, probs.subspan(j * q, q));
}

void MutualInfoAccumulator::add(std::span<const double> probs)
{
	double h = 0.0;
	for (double p : probs)
		if (p > 0.0)
			h += p * std::log2(p);
	sum_ += std::log2(static_cast<double>(q_)) + h;
	++n_;
}

void MutualInfoAccumulator::merge(const MutualInfoAccumulator &other)
{
	sum_ += other.sum_;
	n_ += other.n_;
}

double MutualInfoAccumulator::value() const
{
	if (n_ == 0)
		throw NumericError("estimate_I: no samples");
	return std::clamp(sum_ / static_cast<double>(n_), 0.0, std::log2(static_cast<double>(q_)));
}

double estimate_I(std::span<const SymbolPosterior> samples)
{
	if (samples.empty())
		throw NumericError("estimate_I: no samples");
	MutualInfoAccumulator acc(static_cast<unsigned>(samples.front().probs.size()));
	for (const auto &s : samples)
		acc.add(s.probs);
	return acc.value();
}

std::vector<double> estimate_Z_pairwise(const AwgnChannel &channel, const FieldSpec &field, std::size_t n_samples,
					Rng &rng)
{
	if (n_samples == 0)
		throw DomainError("estimate_Z: n_samples must be positive");
	const unsigned q = field.q();
	const unsigned t = field.t();
	std::vector<double> z(q * q, 0.0);
	std::vector<std::size_t> draws(q, 0);
	std::vector<std::uint8_t> bits(t);
	std::vector<double> y(t), ll(q);
	std::uniform_int_distribution<unsigned> pick(0, q - 1);
	const double var = channel.noise_variance;
	const double inv_two_var = std::isinf(var) ? 0.0 : (var > 0.0 ? 1.0 / (2.0 * var) : std::numeric_limits<double>::infinity());
	for (std::size_t n = 0; n < n_samples; ++n) {
		const auto x = static_cast<Symbol>(pick(rng));
		field.symbol_to_bits(x, bits);
		transmit(bits, channel, rng, y);
		++draws[x];
		if (std::isinf(inv_two_var))
			continue; // disjoint supports, every ratio is 0
		symbol_loglik(y, inv_two_var, field, ll);
		for (unsigned xp = 0; xp < q; ++xp)
			z[x * q + xp] += std::exp(0.5 * (ll[xp] - ll[x]));
	}
	for (unsigned x = 0; x < q; ++x)
		for (unsigned xp = 0; xp < q; ++xp)
			z[x * q + xp] = x == xp ? 1.0 : (draws[x] ? z[x * q + xp] / static_cast<double>(draws[x]) : 0.0);
	return z;
}

double estimate_Z(const AwgnChannel &channel, const FieldSpec &field, std::size_t n_samples, Rng &rng)
{
	const auto pair = estimate_Z_pairwise(channel, field, n_samples, rng);
	const unsigned q = field.q();
	double acc = 0.0;
	for (unsigned x = 0; x < q; ++x)
		for (unsigned xp = 0; xp < q; ++xp)
			if (x != xp)
				acc += pair[x * q + xp];
	return acc / (q * (q - 1.0));
}

double pe_bound(double z, unsigned q)
{
	if (!(z >= 0.0 && z <= 1.0))
		throw DomainError("pe_bound: z must be in [0, 1]");
	return (q - 1.0) * z;
}

} // namespace rspolar
