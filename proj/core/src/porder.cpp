#include "rspolar/porder.hpp"

#include "rspolar/error.hpp"

#include <algorithm>
#include <string>

namespace rspolar {

namespace {

std::uint32_t checked_size(unsigned q, unsigned m)
{
	if (q < 2)
		throw ConfigError("porder: q must be >= 2");
	std::uint64_t n = 1;
	for (unsigned k = 0; k < m; ++k) {
		n *= q;
		if (n > (1ull << 31))
			throw ConfigError("porder: q^m too large");
	}
	return static_cast<std::uint32_t>(n);
}

} // namespace

QaryIndex::QaryIndex(std::uint32_t value, unsigned q, unsigned m) : value_(value), q_(q), digits_(m)
{
	const std::uint32_t n = checked_size(q, m);
	if (value >= n)
		throw DomainError("index " + std::to_string(value) + " out of range for q^m = " + std::to_string(n));
	for (unsigned k = 0; k < m; ++k) {
		digits_[k] = value % q;
		value /= q;
	}
}

QaryIndex QaryIndex::from_digits(std::vector<unsigned> digits, unsigned q)
{
	QaryIndex i;
	i.q_ = q;
	std::uint32_t v = 0;
	for (auto k = digits.size(); k-- > 0;) {
		if (digits[k] >= q)
			throw DomainError("digit out of range");
		v = v * q + digits[k];
	}
	i.value_ = v;
	i.digits_ = std::move(digits);
	return i;
}

QaryIndex addition_op(const QaryIndex &i, unsigned k)
{
	if (k >= i.m())
		throw DomainError("addition_op: position " + std::to_string(k) + " out of range");
	if (i.digit(k) == i.q() - 1)
		return i;
	auto d = i.digits();
	++d[k];
	return QaryIndex::from_digits(std::move(d), i.q());
}

QaryIndex left_swap_op(const QaryIndex &i, unsigned k1, unsigned k2)
{
	if (k1 >= k2 || k2 >= i.m())
		throw DomainError("left_swap_op: need k1 < k2 < m");
	if (i.digit(k1) <= i.digit(k2))
		return i;
	auto d = i.digits();
	std::swap(d[k1], d[k2]);
	return QaryIndex::from_digits(std::move(d), i.q());
}

QaryIndex quasi_nested_embed(const QaryIndex &i)
{
	auto d = i.digits();
	d.push_back(0);
	return QaryIndex::from_digits(std::move(d), i.q());
}

PartialOrder::PartialOrder(unsigned q, unsigned m) : q_(q), m_(m), n_(checked_size(q, m))
{
	if (n_ > kClosureLimit)
		return;
	words_ = (n_ + 63) / 64;
	closure_.assign(static_cast<std::size_t>(n_) * words_, 0);
	// Successors always have larger values, so a descending sweep sees them first.
	for (std::uint32_t i = n_; i-- > 0;) {
		std::uint64_t *row = closure_.data() + static_cast<std::size_t>(i) * words_;
		row[i / 64] |= 1ull << (i % 64);
		for (auto s : successors(i)) {
			const std::uint64_t *src = closure_.data() + static_cast<std::size_t>(s) * words_;
			for (std::size_t w = 0; w < words_; ++w)
				row[w] |= src[w];
		}
	}
}

std::vector<std::uint32_t> PartialOrder::successors(std::uint32_t i) const
{
	const QaryIndex idx(i, q_, m_);
	std::vector<std::uint32_t> out;
	for (unsigned k = 0; k < m_; ++k) {
		auto a = addition_op(idx, k).value();
		if (a != i)
			out.push_back(a);
	}
	for (unsigned k2 = 1; k2 < m_; ++k2)
		for (unsigned k1 = 0; k1 < k2; ++k1) {
			auto l = left_swap_op(idx, k1, k2).value();
			if (l != i)
				out.push_back(l);
		}
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

std::vector<std::uint64_t> PartialOrder::reach_from(std::uint32_t i) const
{
	const std::size_t words = (n_ + 63) / 64;
	std::vector<std::uint64_t> seen(words, 0);
	std::vector<std::uint32_t> stack{i};
	seen[i / 64] |= 1ull << (i % 64);
	while (!stack.empty()) {
		const auto v = stack.back();
		stack.pop_back();
		for (auto s : successors(v)) {
			auto &w = seen[s / 64];
			const auto bit = 1ull << (s % 64);
			if (!(w & bit)) {
				w |= bit;
				stack.push_back(s);
			}
		}
	}
	return seen;
}

bool PartialOrder::dominates(std::uint32_t j, std::uint32_t i) const
{
	if (i >= n_ || j >= n_)
		throw DomainError("po_dominates: index out of range");
	if (j < i)
		return false;
	if (!closure_.empty())
		return (closure_[static_cast<std::size_t>(i) * words_ + j / 64] >> (j % 64)) & 1u;
	const auto seen = reach_from(i);
	return (seen[j / 64] >> (j % 64)) & 1u;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> PartialOrder::pairs() const
{
	if (n_ > kPairsLimit)
		throw ConfigError("po_pairs: q^m exceeds " + std::to_string(kPairsLimit));
	std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
	for (std::uint32_t i = 0; i < n_; ++i) {
		const std::uint64_t *row;
		std::vector<std::uint64_t> tmp;
		if (!closure_.empty()) {
			row = closure_.data() + static_cast<std::size_t>(i) * words_;
		} else {
			tmp = reach_from(i);
			row = tmp.data();
		}
		for (std::uint32_t j = i + 1; j < n_; ++j)
			if ((row[j / 64] >> (j % 64)) & 1u)
				out.emplace_back(i, j);
	}
	return out;
}

bool po_dominates(std::uint32_t j, std::uint32_t i, unsigned q, unsigned m)
{
	return PartialOrder(q, m).dominates(j, i);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> po_pairs(unsigned q, unsigned m)
{
	return PartialOrder(q, m).pairs();
}

} // namespace rspolar
