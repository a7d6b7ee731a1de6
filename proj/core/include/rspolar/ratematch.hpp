#pragma once

#include "rspolar/channel.hpp"
#include "rspolar/construct.hpp"
#include "rspolar/galois.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rspolar {

struct PartialSymbol {
	std::uint32_t index = 0;
	unsigned sigma = 0; // punctured bits, in [1, t)
};

struct PuncturePattern {
	std::vector<std::uint32_t> full_symbols;
	std::optional<PartialSymbol> partial;
	std::vector<std::size_t> punctured_bits; // sorted code-bit positions
	std::vector<std::uint32_t> frozen_additions;
	std::size_t n_bits = 0;

	bool empty() const { return punctured_bits.empty(); }
	std::size_t transmitted_bits() const { return n_bits - punctured_bits.size(); }
};

enum class PunctureScheme { None, Mpwp, Sip };
std::string to_string(PunctureScheme s);
PunctureScheme scheme_from_string(const std::string &s);

/// Smallest-weight frozen symbols; the last one loses only its final
/// sigma = (N_b - M_b) mod t bits when sigma > 0.
PuncturePattern mpwp_pattern(const ReliabilitySequence &seq, std::span<const std::uint32_t> info_set,
			     std::size_t n_bits, std::size_t m_bits, unsigned t);

/// Same shape, symbols taken in increasing index order from the frozen set.
PuncturePattern sip_pattern(std::span<const std::uint32_t> info_set, std::size_t n_symbols, std::size_t n_bits,
			    std::size_t m_bits, unsigned t);

/// Builds the pattern from symbols already in puncturing order.
PuncturePattern pattern_from_symbols(std::span<const std::uint32_t> ranked, std::size_t n_bits, std::size_t m_bits,
				     unsigned t);

std::vector<std::uint8_t> apply_puncture(std::span<const std::uint8_t> code_bits, const PuncturePattern &pattern);

/// Reinserts punctured positions as y = 0, which the posterior treats as LLR 0.
std::vector<double> pad_received(std::span<const double> received, const PuncturePattern &pattern);

/// N*q posteriors (row-major) for the decoder.
std::vector<double> pad_posteriors(std::span<const double> received, const PuncturePattern &pattern,
				   const AwgnChannel &channel, const FieldSpec &field);

std::string pattern_to_json(const PuncturePattern &pattern);

} // namespace rspolar
