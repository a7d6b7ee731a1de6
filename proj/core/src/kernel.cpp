#include "rspolar/kernel.hpp"

#include "rspolar/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rspolar {

namespace {

constexpr unsigned kMaxEnumerationQ = 8;

// Minimum Hamming weight over g_i + span(g_{i+1..q-1}); writes the minimiser.
unsigned coset_min_weight(const RSKernel &k, unsigned i, std::vector<Symbol> &leader)
{
	const unsigned q = k.q();
	const FieldSpec &f = k.field();
	const unsigned free_rows = q - 1 - i;
	std::vector<Symbol> coef(free_rows, 0);
	std::vector<Symbol> word(q);
	unsigned best = q + 1;
	for (;;) {
		auto gi = k.row(i);
		std::copy(gi.begin(), gi.end(), word.begin());
		for (unsigned r = 0; r < free_rows; ++r) {
			if (!coef[r])
				continue;
			auto g = k.row(i + 1 + r);
			for (unsigned j = 0; j < q; ++j)
				word[j] ^= f.mul(coef[r], g[j]);
		}
		const auto w = static_cast<unsigned>(std::count_if(word.begin(), word.end(), [](Symbol s) { return s != 0; }));
		if (w < best) {
			best = w;
			leader = word;
		}
		unsigned r = 0;
		while (r < free_rows && ++coef[r] == q)
			coef[r++] = 0;
		if (r == free_rows)
			break;
	}
	return best;
}

} // namespace

std::span<const Symbol> RSKernel::coset_leader(unsigned i) const
{
	if (leaders_.empty())
		throw ConfigError("kernel: coset leaders are only enumerated for q <= 8");
	if (i >= q())
		throw DomainError("kernel: row index out of range");
	return {leaders_.data() + i * q(), q()};
}

void RSKernel::apply(std::span<const Symbol> in, std::span<Symbol> out) const
{
	const unsigned n = q();
	std::fill(out.begin(), out.end(), Symbol{0});
	for (unsigned a = 0; a < n; ++a) {
		const Symbol s = in[a];
		if (!s)
			continue;
		const Symbol *g = matrix_.data() + a * n;
		for (unsigned j = 0; j < n; ++j)
			out[j] ^= field_.mul(s, g[j]);
	}
}

RSKernel build_rs_kernel(const FieldSpec &field, Symbol gamma)
{
	if (gamma == 0)
		gamma = field.alpha();
	if (!field.valid(gamma))
		throw ConfigError("kernel: gamma is not a field element");
	if (field.q() < 2)
		throw ConfigError("kernel: q must be at least 2");

	RSKernel k;
	k.field_ = field;
	k.gamma_ = gamma;
	const unsigned q = field.q();
	const long order = q - 1;
	k.matrix_.assign(q * q, 0);
	for (unsigned r = 0; r < q; ++r) {
		const long e = (order - r) % order;
		for (unsigned j = 0; j + 1 < q; ++j) {
			// x_j^e = alpha^{(q-2-j) e}
			k.matrix_[r * q + j] = field.alpha_pow(static_cast<long>(q - 2 - j) * e);
		}
	}
	k.matrix_[(q - 1) * q + (q - 1)] = gamma;

	if (q <= kMaxEnumerationQ) {
		k.distances_.resize(q);
		k.leaders_.resize(q * q);
		std::vector<Symbol> leader;
		for (unsigned i = 0; i < q; ++i) {
			k.distances_[i] = coset_min_weight(k, i, leader);
			std::copy(leader.begin(), leader.end(), k.leaders_.begin() + i * q);
		}
		k.verified_ = true;
	} else {
		// MDS bound, not checked.
		k.distances_.resize(q);
		for (unsigned i = 0; i < q; ++i)
			k.distances_[i] = i + 1;
	}
	return k;
}

unsigned partial_distance(const RSKernel &kernel, unsigned i)
{
	if (i >= kernel.q())
		throw DomainError("partial_distance: index " + std::to_string(i) + " out of range");
	if (kernel.q() > kMaxEnumerationQ)
		throw ConfigError("partial_distance: enumeration limited to q <= 8");
	std::vector<Symbol> leader;
	return coset_min_weight(kernel, i, leader);
}

double kernel_exponent(unsigned q)
{
	if (q < 2)
		throw DomainError("kernel_exponent: q must be >= 2");
	return std::lgamma(static_cast<double>(q) + 1.0) / (q * std::log(static_cast<double>(q)));
}

unsigned kernel_rank(const RSKernel &kernel)
{
	const FieldSpec &f = kernel.field();
	const unsigned q = kernel.q();
	std::vector<Symbol> a(q * q);
	for (unsigned r = 0; r < q; ++r)
		for (unsigned c = 0; c < q; ++c)
			a[r * q + c] = kernel.at(r, c);
	unsigned rank = 0;
	for (unsigned c = 0; c < q && rank < q; ++c) {
		unsigned pivot = rank;
		while (pivot < q && a[pivot * q + c] == 0)
			++pivot;
		if (pivot == q)
			continue;
		for (unsigned j = 0; j < q; ++j)
			std::swap(a[pivot * q + j], a[rank * q + j]);
		const Symbol inv = f.inv(a[rank * q + c]);
		for (unsigned j = 0; j < q; ++j)
			a[rank * q + j] = f.mul(a[rank * q + j], inv);
		for (unsigned r = 0; r < q; ++r) {
			if (r == rank || a[r * q + c] == 0)
				continue;
			const Symbol factor = a[r * q + c];
			for (unsigned j = 0; j < q; ++j)
				a[r * q + j] ^= f.mul(factor, a[rank * q + j]);
		}
		++rank;
	}
	return rank;
}

unsigned stages_for_length(std::size_t n, unsigned q)
{
	if (n == 0)
		throw DomainError("length must be a power of q, got 0");
	unsigned m = 0;
	std::size_t v = 1;
	while (v < n) {
		v *= q;
		++m;
	}
	if (v != n)
		throw DomainError("length " + std::to_string(n) + " is not a power of " + std::to_string(q));
	return m;
}

void encode_inplace(std::span<Symbol> s, const RSKernel &kernel)
{
	const unsigned q = kernel.q();
	const unsigned m = stages_for_length(s.size(), q);
	std::vector<Symbol> in(q), out(q);
	std::size_t stride = 1;
	for (unsigned stage = 0; stage < m; ++stage) {
		const std::size_t block = stride * q;
		for (std::size_t base = 0; base < s.size(); base += block) {
			for (std::size_t p = 0; p < stride; ++p) {
				for (unsigned a = 0; a < q; ++a)
					in[a] = s[base + a * stride + p];
				kernel.apply(in, out);
				for (unsigned j = 0; j < q; ++j)
					s[base + j * stride + p] = out[j];
			}
		}
		stride = block;
	}
}

std::vector<Symbol> encode(std::span<const Symbol> s, const RSKernel &kernel)
{
	std::vector<Symbol> c(s.begin(), s.end());
	encode_inplace(c, kernel);
	return c;
}

} // namespace rspolar
