#include "rspolar/galois.hpp"

#include "rspolar/error.hpp"

#include <bit>
#include <string>

namespace rspolar {

std::uint32_t FieldSpec::default_poly(unsigned t)
{
	// x+1, x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x^3+1, x^8+x^4+x^3+x^2+1
	static constexpr std::uint32_t table[] = {0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D};
	if (t < 1 || t > 8)
		throw ConfigError("field: t must be in [1, 8], got " + std::to_string(t));
	return table[t];
}

FieldSpec build_field(unsigned t, std::uint32_t prim_poly)
{
	if (prim_poly == 0)
		prim_poly = FieldSpec::default_poly(t);
	if (t < 1 || t > 8)
		throw ConfigError("field: t must be in [1, 8], got " + std::to_string(t));
	if (std::bit_width(prim_poly) != t + 1)
		throw ConfigError("field: polynomial degree does not match t = " + std::to_string(t));

	FieldSpec f;
	f.t_ = t;
	f.q_ = 1u << t;
	f.poly_ = prim_poly;
	const unsigned order = f.q_ - 1;

	f.exp_.resize(order);
	f.log_.assign(f.q_, -1);
	std::uint32_t x = 1;
	for (unsigned k = 0; k < order; ++k) {
		if (x == 0 || f.log_[x] != -1)
			throw ConfigError("field: polynomial is not primitive (cycle length " + std::to_string(k) + ")");
		f.exp_[k] = static_cast<Symbol>(x);
		f.log_[x] = static_cast<int>(k);
		x <<= 1;
		if (x & f.q_)
			x ^= prim_poly;
	}
	if (x != 1)
		throw ConfigError("field: polynomial is not primitive");

	f.mul_.assign(f.q_ * f.q_, 0);
	for (unsigned a = 1; a < f.q_; ++a)
		for (unsigned b = 1; b < f.q_; ++b)
			f.mul_[a * f.q_ + b] = f.exp_[(f.log_[a] + f.log_[b]) % order];

	f.sym_of_code_.resize(f.q_);
	f.code_of_.resize(f.q_);
	for (unsigned k = 0; k < f.q_; ++k) {
		const Symbol s = k == 0 ? Symbol{0} : f.exp_[k % order];
		f.sym_of_code_[k] = s;
		f.code_of_[s] = k;
	}
	return f;
}

Symbol FieldSpec::inv(Symbol a) const
{
	if (a == 0 || a >= q_)
		throw DomainError("gf_inv: zero has no inverse");
	const unsigned order = q_ - 1;
	return exp_[(order - log_[a]) % order];
}

Symbol FieldSpec::alpha_pow(long e) const
{
	const long order = q_ - 1;
	long r = e % order;
	if (r < 0)
		r += order;
	return exp_[r];
}

Symbol FieldSpec::pow(Symbol a, unsigned e) const
{
	if (e == 0)
		return 1;
	if (a == 0)
		return 0;
	return alpha_pow(static_cast<long>(log_[a]) * e);
}

Symbol FieldSpec::bits_to_symbol(std::span<const std::uint8_t> bits) const
{
	if (bits.size() != t_)
		throw DomainError("bits_to_symbol: expected " + std::to_string(t_) + " bits");
	unsigned k = 0;
	for (auto b : bits)
		k = (k << 1) | (b & 1u);
	return sym_of_code_[k];
}

void FieldSpec::symbol_to_bits(Symbol s, std::span<std::uint8_t> bits) const
{
	if (bits.size() != t_ || s >= q_)
		throw DomainError("symbol_to_bits: bad symbol or output size");
	const unsigned k = code_of_[s];
	for (unsigned b = 0; b < t_; ++b)
		bits[b] = (k >> (t_ - 1 - b)) & 1u;
}

std::vector<std::uint8_t> FieldSpec::symbol_to_bits(Symbol s) const
{
	std::vector<std::uint8_t> bits(t_);
	symbol_to_bits(s, bits);
	return bits;
}

} // namespace rspolar
