#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace rspolar {

/// Sub-channel index with its q-ary digits; digit k is the coefficient of q^k.
class QaryIndex {
public:
	QaryIndex(std::uint32_t value, unsigned q, unsigned m);
	static QaryIndex from_digits(std::vector<unsigned> digits, unsigned q);

	std::uint32_t value() const { return value_; }
	unsigned q() const { return q_; }
	unsigned m() const { return static_cast<unsigned>(digits_.size()); }
	unsigned digit(unsigned k) const { return digits_.at(k); }
	const std::vector<unsigned> &digits() const { return digits_; }

	bool operator==(const QaryIndex &) const = default;

private:
	QaryIndex() = default;
	std::uint32_t value_ = 0;
	unsigned q_ = 0;
	std::vector<unsigned> digits_;
};

/// Addition operator at position k: increments digit k unless it is q-1.
QaryIndex addition_op(const QaryIndex &i, unsigned k);

/// Left-swap operator at (k1, k2), k1 < k2: swaps the digits when
/// digit(k1) > digit(k2), moving the larger one to the more significant place.
QaryIndex left_swap_op(const QaryIndex &i, unsigned k1, unsigned k2);

/// Same index with a zero digit prepended at position m.
QaryIndex quasi_nested_embed(const QaryIndex &i);

/// Reachability closure of the addition and left-swap operators on [0, q^m).
/// Every operator image has a value >= its argument, so the closure is a
/// partial order compatible with the natural order of indices.
class PartialOrder {
public:
	/// Materialises the closure as bitsets up to kClosureLimit indices; larger
	/// sizes answer queries by search.
	static constexpr std::uint32_t kClosureLimit = 4096;
	/// po_pairs refuses to enumerate beyond this many indices.
	static constexpr std::uint32_t kPairsLimit = 1u << 16;

	PartialOrder(unsigned q, unsigned m);

	unsigned q() const { return q_; }
	unsigned m() const { return m_; }
	std::uint32_t size() const { return n_; }

	/// True iff j is reachable from i (reflexive).
	bool dominates(std::uint32_t j, std::uint32_t i) const;
	bool comparable(std::uint32_t a, std::uint32_t b) const { return dominates(a, b) || dominates(b, a); }

	/// All (i, j), i != j, with j dominating i.
	std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const;

	/// Direct operator images of i (without i itself).
	std::vector<std::uint32_t> successors(std::uint32_t i) const;

private:
	std::vector<std::uint64_t> reach_from(std::uint32_t i) const;

	unsigned q_;
	unsigned m_;
	std::uint32_t n_;
	std::size_t words_ = 0;
	std::vector<std::uint64_t> closure_;
};

bool po_dominates(std::uint32_t j, std::uint32_t i, unsigned q, unsigned m);
std::vector<std::pair<std::uint32_t, std::uint32_t>> po_pairs(unsigned q, unsigned m);

} // namespace rspolar
