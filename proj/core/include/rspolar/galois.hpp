#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rspolar {

/// Element of GF(2^t) in polynomial basis; valid values are [0, q).
using Symbol = std::uint8_t;

/// GF(2^t) with exp/log tables, plus the bit <-> symbol mapping used at
/// the modulation boundary.
///
/// Bits (b_0, ..., b_{t-1}) are read as k = sum b_i 2^{t-1-i} and mapped to
/// 0 when k = 0 and to alpha^k otherwise, so for t = 2:
/// (0,0) -> 0, (0,1) -> alpha, (1,0) -> alpha^2, (1,1) -> alpha^3 = 1.
class FieldSpec {
public:
	/// Default primitive polynomial (bit mask including x^t) for 1 <= t <= 8.
	static std::uint32_t default_poly(unsigned t);

	unsigned t() const { return t_; }
	unsigned q() const { return q_; }
	std::uint32_t prim_poly() const { return poly_; }
	Symbol alpha() const { return exp_[1 % (q_ - 1)]; }

	const std::vector<Symbol> &exp_table() const { return exp_; }
	const std::vector<int> &log_table() const { return log_; }

	Symbol add(Symbol a, Symbol b) const { return a ^ b; }
	Symbol mul(Symbol a, Symbol b) const { return mul_[a * q_ + b]; }
	Symbol inv(Symbol a) const;
	/// alpha^e for any integer e.
	Symbol alpha_pow(long e) const;
	Symbol pow(Symbol a, unsigned e) const;

	Symbol bits_to_symbol(std::span<const std::uint8_t> bits) const;
	void symbol_to_bits(Symbol s, std::span<std::uint8_t> bits) const;
	std::vector<std::uint8_t> symbol_to_bits(Symbol s) const;
	/// Bit b (0 <= b < t) of the Eq.-17-style unpacking of s.
	std::uint8_t bit(Symbol s, unsigned b) const { return (code_of_[s] >> (t_ - 1 - b)) & 1u; }

	bool valid(Symbol s) const { return s < q_; }

private:
	friend FieldSpec build_field(unsigned t, std::uint32_t prim_poly);
	friend class RSKernel;
	FieldSpec() = default;

	unsigned t_ = 0;
	unsigned q_ = 0;
	std::uint32_t poly_ = 0;
	std::vector<Symbol> exp_;
	std::vector<int> log_;
	std::vector<Symbol> mul_;
	std::vector<Symbol> sym_of_code_;
	std::vector<unsigned> code_of_;
};

/// Builds GF(2^t) from a primitive polynomial; prim_poly = 0 picks the default.
/// Throws ConfigError for t outside [1, 8], a wrong degree, or a
/// non-primitive polynomial (exp cycle shorter than q - 1).
FieldSpec build_field(unsigned t, std::uint32_t prim_poly = 0);

inline Symbol gf_add(const FieldSpec &f, Symbol a, Symbol b) { return f.add(a, b); }
inline Symbol gf_mul(const FieldSpec &f, Symbol a, Symbol b) { return f.mul(a, b); }
/// Throws DomainError for a = 0.
inline Symbol gf_inv(const FieldSpec &f, Symbol a) { return f.inv(a); }

} // namespace rspolar
