#include "rspolar/ratematch.hpp"

#include "rspolar/error.hpp"

#include <algorithm>
#include <string>

namespace rspolar {

std::string to_string(PunctureScheme s)
{
	switch (s) {
	case PunctureScheme::Mpwp:
		return "mpwp";
	case PunctureScheme::Sip:
		return "sip";
	default:
		return "none";
	}
}

PunctureScheme scheme_from_string(const std::string &s)
{
	if (s == "none")
		return PunctureScheme::None;
	if (s == "mpwp")
		return PunctureScheme::Mpwp;
	if (s == "sip")
		return PunctureScheme::Sip;
	throw ConfigError("unknown rate-matching scheme '" + s + "' (expected none, mpwp or sip)");
}

namespace {

std::vector<std::uint32_t> frozen_of(std::span<const std::uint32_t> info_set, std::size_t n)
{
	std::vector<std::uint8_t> is_info(n, 0);
	for (auto i : info_set) {
		if (i >= n)
			throw ConfigError("info index " + std::to_string(i) + " outside code of length " + std::to_string(n));
		is_info[i] = 1;
	}
	std::vector<std::uint32_t> f;
	for (std::uint32_t i = 0; i < n; ++i)
		if (!is_info[i])
			f.push_back(i);
	return f;
}

void check_sizes(std::size_t n_bits, std::size_t m_bits, unsigned t)
{
	if (t == 0 || n_bits % t)
		throw ConfigError("N_b = " + std::to_string(n_bits) + " is not a multiple of t");
	if (m_bits > n_bits)
		throw ConfigError("M_b = " + std::to_string(m_bits) + " exceeds N_b = " + std::to_string(n_bits));
	if (m_bits == 0)
		throw ConfigError("M_b must be positive");
}

} // namespace

PuncturePattern pattern_from_symbols(std::span<const std::uint32_t> ranked, std::size_t n_bits, std::size_t m_bits,
				     unsigned t)
{
	check_sizes(n_bits, m_bits, t);
	PuncturePattern p;
	p.n_bits = n_bits;
	const std::size_t gap = n_bits - m_bits;
	if (gap == 0)
		return p;
	const std::size_t l = (gap + t - 1) / t;
	if (l > ranked.size())
		throw ConfigError("puncturing " + std::to_string(gap) + " bits needs " + std::to_string(l) +
				  " frozen symbols, only " + std::to_string(ranked.size()) + " available");
	const unsigned sigma = static_cast<unsigned>(gap % t);
	for (std::size_t k = 0; k < l; ++k) {
		const std::uint32_t s = ranked[k];
		p.frozen_additions.push_back(s);
		if (k + 1 == l && sigma > 0) {
			p.partial = PartialSymbol{s, sigma};
			for (unsigned b = t - sigma; b < t; ++b)
				p.punctured_bits.push_back(static_cast<std::size_t>(s) * t + b);
		} else {
			p.full_symbols.push_back(s);
			for (unsigned b = 0; b < t; ++b)
				p.punctured_bits.push_back(static_cast<std::size_t>(s) * t + b);
		}
	}
	std::sort(p.punctured_bits.begin(), p.punctured_bits.end());
	return p;
}

PuncturePattern mpwp_pattern(const ReliabilitySequence &seq, std::span<const std::uint32_t> info_set,
			     std::size_t n_bits, std::size_t m_bits, unsigned t)
{
	if (seq.length() * t != n_bits)
		throw ConfigError("sequence length " + std::to_string(seq.length()) + " does not match N_b = " +
				  std::to_string(n_bits));
	auto f = frozen_of(info_set, seq.length());
	// Ascending weight; the sequence order breaks ties the same way it ranks.
	std::vector<std::uint32_t> rank(seq.length());
	for (std::size_t k = 0; k < seq.order.size(); ++k)
		rank[seq.order[k]] = static_cast<std::uint32_t>(k);
	std::sort(f.begin(), f.end(), [&](std::uint32_t a, std::uint32_t b) { return rank[a] > rank[b]; });
	return pattern_from_symbols(f, n_bits, m_bits, t);
}

PuncturePattern sip_pattern(std::span<const std::uint32_t> info_set, std::size_t n_symbols, std::size_t n_bits,
			    std::size_t m_bits, unsigned t)
{
	if (n_symbols * t != n_bits)
		throw ConfigError("N = " + std::to_string(n_symbols) + " symbols does not match N_b = " +
				  std::to_string(n_bits));
	return pattern_from_symbols(frozen_of(info_set, n_symbols), n_bits, m_bits, t);
}

std::vector<std::uint8_t> apply_puncture(std::span<const std::uint8_t> code_bits, const PuncturePattern &pattern)
{
	if (code_bits.size() != pattern.n_bits)
		throw DomainError("apply_puncture: got " + std::to_string(code_bits.size()) + " bits, pattern is for " +
				  std::to_string(pattern.n_bits));
	std::vector<std::uint8_t> out;
	out.reserve(pattern.transmitted_bits());
	auto next = pattern.punctured_bits.begin();
	for (std::size_t j = 0; j < code_bits.size(); ++j) {
		if (next != pattern.punctured_bits.end() && *next == j) {
			++next;
			continue;
		}
		out.push_back(code_bits[j]);
	}
	return out;
}

std::vector<double> pad_received(std::span<const double> received, const PuncturePattern &pattern)
{
	if (received.size() != pattern.transmitted_bits())
		throw DomainError("pad_received: got " + std::to_string(received.size()) + " values, expected " +
				  std::to_string(pattern.transmitted_bits()));
	std::vector<double> y(pattern.n_bits, 0.0);
	auto next = pattern.punctured_bits.begin();
	std::size_t k = 0;
	for (std::size_t j = 0; j < y.size(); ++j) {
		if (next != pattern.punctured_bits.end() && *next == j) {
			++next;
			continue;
		}
		y[j] = received[k++];
	}
	return y;
}

std::vector<double> pad_posteriors(std::span<const double> received, const PuncturePattern &pattern,
				   const AwgnChannel &channel, const FieldSpec &field)
{
	const auto y = pad_received(received, pattern);
	std::vector<double> probs(y.size() / field.t() * field.q());
	word_posteriors(y, channel, field, probs);
	return probs;
}

} // namespace rspolar
