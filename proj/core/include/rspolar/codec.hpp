#pragma once

#include "rspolar/channel.hpp"
#include "rspolar/galois.hpp"
#include "rspolar/kernel.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rspolar {

/// Non-reflected CRC with zero initial register and no output xor.
/// width = 0 disables the check.
struct CrcSpec {
	unsigned width = 8;
	std::uint32_t poly = 0x07; // x^8 + x^2 + x + 1, top bit implicit
};

std::uint32_t crc_remainder(std::span<const std::uint8_t> bits, const CrcSpec &crc);
/// bits followed by the width-bit remainder, most significant bit first.
std::vector<std::uint8_t> crc_attach(std::span<const std::uint8_t> bits, const CrcSpec &crc = {});
bool crc_check(std::span<const std::uint8_t> bits, const CrcSpec &crc = {});

/// One concrete RS polar code: kernel, length N = q^m, information symbols.
/// The CRC occupies the last crc.width bits of the information bits, i.e.
/// the highest-index information symbols.
class CodeSpec {
public:
	/// info_set may be unsorted; duplicates or out-of-range indices throw ConfigError.
	CodeSpec(RSKernel kernel, unsigned m, std::vector<std::uint32_t> info_set, CrcSpec crc = {},
		 unsigned list_size = 2);

	const RSKernel &kernel() const { return kernel_; }
	const FieldSpec &field() const { return kernel_.field(); }
	unsigned q() const { return kernel_.q(); }
	unsigned t() const { return kernel_.field().t(); }
	unsigned m() const { return m_; }
	std::size_t length() const { return n_; }
	std::size_t code_bits() const { return n_ * t(); }
	/// K_b = t |I|, CRC included.
	std::size_t info_bits() const { return info_.size() * t(); }
	std::size_t payload_bits() const { return info_bits() - crc_.width; }

	const std::vector<std::uint32_t> &info_set() const { return info_; }
	std::vector<std::uint32_t> frozen_set() const;
	bool frozen(std::uint32_t i) const { return frozen_[i] != 0; }
	const CrcSpec &crc() const { return crc_; }
	unsigned list_size() const { return list_size_; }

private:
	RSKernel kernel_;
	unsigned m_;
	std::size_t n_;
	std::vector<std::uint32_t> info_;
	std::vector<std::uint8_t> frozen_;
	CrcSpec crc_;
	unsigned list_size_;
};

/// Input symbols s (zeros on F) carrying the K_b information bits.
std::vector<Symbol> place_info(std::span<const std::uint8_t> info_bits, const CodeSpec &spec);
std::vector<std::uint8_t> extract_info(std::span<const Symbol> symbols, const CodeSpec &spec);
std::vector<std::uint8_t> symbols_to_bits(std::span<const Symbol> symbols, const FieldSpec &field);

/// Code bits (length t N) for K_b information bits (CRC already attached).
std::vector<std::uint8_t> encode_codeword(std::span<const std::uint8_t> info_bits, const CodeSpec &spec);

/// Exact posterior of input symbol i of one kernel given the q output
/// posteriors (row-major q x q) and the decided inputs s_0..s_{i-1}, by
/// enumerating every tail s_{i+1..q-1}.
class KernelMarginalizer {
public:
	explicit KernelMarginalizer(const RSKernel &kernel);

	/// Returns false (and leaves out uniform) when the total mass is zero.
	bool marginal(std::span<const double> in, std::span<const Symbol> prefix, unsigned i,
		      std::span<double> out) const;
	const RSKernel &kernel() const { return kernel_; }

private:
	RSKernel kernel_;
	// tails_[i]: codewords of sum_{b >= i} s_b g_b, s_i slowest.
	std::vector<std::vector<Symbol>> tails_;
};

/// Throws NumericError on zero mass and DomainError on bad sizes.
SymbolPosterior kernel_marginal(std::span<const SymbolPosterior> posteriors, std::span<const Symbol> decided,
				unsigned i, const RSKernel &kernel);

struct DecodeResult {
	std::vector<Symbol> symbols;        // decided inputs s_0..s_{N-1}
	std::vector<std::uint8_t> info_bits; // K_b bits, CRC included
	bool crc_ok = false;
	double metric = 0.0;                // log-probability of the returned path
};

/// Successive-cancellation decoder over the m kernel stages.
/// Leaf posteriors are N*q doubles, row-major by codeword position.
class ScDecoder {
public:
	ScDecoder(const RSKernel &kernel, unsigned m);

	/// Argmax decisions, frozen positions forced to 0.
	std::vector<Symbol> decode(std::span<const double> leaf, std::span<const std::uint8_t> frozen_mask);

	/// Genie-aided pass: at every index records whether the argmax differs
	/// from truth[i], then continues with truth[i].
	void decode_genie(std::span<const double> leaf, std::span<const Symbol> truth, std::span<std::uint8_t> wrong);

private:
	friend class ListDecoder;
	KernelMarginalizer marg_;
	unsigned m_;
	std::size_t n_;
};

/// CRC-aided successive-cancellation list decoder.
class ListDecoder {
public:
	explicit ListDecoder(const CodeSpec &spec);

	/// Paths fork into q children at information symbols; the best list_size
	/// survive (ties: lower parent path, then lower symbol). Returns the best
	/// path passing the CRC, else the best path with crc_ok = false.
	DecodeResult decode(std::span<const double> leaf);
	DecodeResult decode(std::span<const double> leaf, unsigned list_size);

	const CodeSpec &spec() const { return spec_; }

private:
	CodeSpec spec_;
	KernelMarginalizer marg_;
};

std::vector<Symbol> sc_decode(std::span<const SymbolPosterior> leaf, const CodeSpec &spec);
DecodeResult ca_scl_decode(std::span<const SymbolPosterior> leaf, const CodeSpec &spec);

std::vector<double> flatten(std::span<const SymbolPosterior> posteriors);

} // namespace rspolar
