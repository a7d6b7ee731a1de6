#pragma once

#include "rspolar/galois.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rspolar {

/// q x q Reed-Solomon kernel over GF(q).
///
/// Column j < q-1 uses the evaluation point x_j = alpha^{q-2-j}; entry
/// (r, j) = x_j^{(q-1-r) mod (q-1)}. The last column is zero except for
/// gamma in the bottom row. For q = 4, gamma = alpha this is
///
///     1   1   1  0
///     a   a^2 1  0
///     a^2 a   1  0
///     1   1   1  a
class RSKernel {
public:
	const FieldSpec &field() const { return field_; }
	unsigned q() const { return field_.q(); }
	Symbol gamma() const { return gamma_; }
	Symbol at(unsigned row, unsigned col) const { return matrix_[row * q() + col]; }
	std::span<const Symbol> row(unsigned r) const { return {matrix_.data() + r * q(), q()}; }

	/// D_0..D_{q-1}; computed by enumeration when q <= 8.
	const std::vector<unsigned> &partial_distances() const { return distances_; }
	bool distances_verified() const { return verified_; }

	/// Minimum-weight representative g'_i of g_i + span(g_{i+1}, ..., g_{q-1}).
	/// Its weight is D_i. Empty when q > 8.
	std::span<const Symbol> coset_leader(unsigned i) const;
	bool has_coset_leaders() const { return !leaders_.empty(); }

	/// out = in * G_q for a length-q row vector.
	void apply(std::span<const Symbol> in, std::span<Symbol> out) const;

private:
	friend RSKernel build_rs_kernel(const FieldSpec &, Symbol);
	RSKernel() = default;

	FieldSpec field_;
	Symbol gamma_ = 0;
	std::vector<Symbol> matrix_;
	std::vector<unsigned> distances_;
	std::vector<Symbol> leaders_;
	bool verified_ = false;
};

/// gamma = 0 picks alpha. Throws ConfigError if gamma is zero after that or
/// not a field element.
RSKernel build_rs_kernel(const FieldSpec &field, Symbol gamma = 0);

/// Partial distance of row i by enumeration over the coset
/// g_i + span(g_{i+1}, ..., g_{q-1}). Throws DomainError if i >= q, and
/// ConfigError if q > 8 (enumeration infeasible).
unsigned partial_distance(const RSKernel &kernel, unsigned i);

/// E(G) = ln(q!) / (q ln q).
double kernel_exponent(unsigned q);

/// Rank over GF(q) by Gaussian elimination.
unsigned kernel_rank(const RSKernel &kernel);

/// Number of kernel stages m with q^m == n, or throws DomainError.
unsigned stages_for_length(std::size_t n, unsigned q);

/// c = s * G_q^{(x)m}, computed stage by stage without forming the N x N matrix.
std::vector<Symbol> encode(std::span<const Symbol> s, const RSKernel &kernel);
void encode_inplace(std::span<Symbol> s, const RSKernel &kernel);

} // namespace rspolar
