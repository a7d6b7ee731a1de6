#include "oracles.hpp"
#include "rspolar/error.hpp"
#include "rspolar/porder.hpp"

#include <doctest.h>

using namespace rspolar;

TEST_CASE("q-ary digits")
{
	const QaryIndex i(27, 4, 3);
	CHECK(i.digit(0) == 3);
	CHECK(i.digit(1) == 2);
	CHECK(i.digit(2) == 1);
	CHECK(QaryIndex::from_digits({3, 2, 1}, 4).value() == 27);
	CHECK_THROWS_AS(QaryIndex(64, 4, 3), DomainError);
}

TEST_CASE("addition operator")
{
	CHECK(addition_op(QaryIndex(25, 4, 3), 1).value() == 29);
	CHECK(addition_op(QaryIndex(0, 4, 1), 0).value() == 1);
	CHECK(addition_op(QaryIndex(3, 4, 2), 0).value() == 3);
	CHECK_THROWS_AS(addition_op(QaryIndex(3, 4, 2), 2), DomainError);
}

TEST_CASE("left-swap operator")
{
	CHECK(left_swap_op(QaryIndex(27, 4, 3), 0, 2).value() == 57);
	CHECK(left_swap_op(QaryIndex(6, 4, 2), 0, 1).value() == 9);
	CHECK(left_swap_op(QaryIndex(9, 4, 2), 0, 1).value() == 9);
	CHECK_THROWS_AS(left_swap_op(QaryIndex(9, 4, 2), 1, 1), DomainError);
	CHECK_THROWS_AS(left_swap_op(QaryIndex(9, 4, 2), 1, 0), DomainError);
}

TEST_CASE("domination matches an independent reachability search")
{
	for (unsigned m = 1; m <= 3; ++m) {
		const PartialOrder order(4, m);
		for (std::uint32_t i = 0; i < order.size(); ++i) {
			const auto reach = oracle::reachable(i, 4, m);
			for (std::uint32_t j = 0; j < order.size(); ++j)
				REQUIRE(order.dominates(j, i) == (reach.count(j) > 0));
		}
	}
	const PartialOrder o2(2, 5);
	for (std::uint32_t i = 0; i < o2.size(); ++i) {
		const auto reach = oracle::reachable(i, 2, 5);
		for (std::uint32_t j = 0; j < o2.size(); ++j)
			REQUIRE(o2.dominates(j, i) == (reach.count(j) > 0));
	}
}

TEST_CASE("worked examples and incomparable pairs")
{
	CHECK(po_dominates(29, 25, 4, 3));
	CHECK(po_dominates(57, 27, 4, 3));
	CHECK(po_dominates(5, 5, 4, 2));
	const PartialOrder o(4, 2);
	CHECK_FALSE(o.comparable(3, 8));
	CHECK_FALSE(o.comparable(7, 12));
	CHECK_FALSE(o.comparable(10, 13));
	CHECK(po_pairs(4, 1).size() == 6);
}

TEST_CASE("quasi-nesting keeps relations")
{
	const auto e = quasi_nested_embed(QaryIndex(7, 4, 2));
	CHECK(e.m() == 3);
	CHECK(e.value() == 7);
	CHECK(e.digit(2) == 0);
	const auto small = po_pairs(4, 2);
	const PartialOrder big(4, 3);
	for (const auto &[i, j] : small)
		CHECK(big.dominates(j, i));
	std::size_t restricted = 0;
	for (const auto &[i, j] : po_pairs(4, 3))
		restricted += (i < 16 && j < 16);
	CHECK(restricted == small.size());
	CHECK(PartialOrder(4, 4).dominates(29, 25));
}

TEST_CASE("large orders fall back to search")
{
	const PartialOrder o(4, 7); // 16384 indices, beyond the closure table
	CHECK(o.dominates(29, 25));
	CHECK(o.dominates(16383, 0));
	CHECK_FALSE(o.dominates(25, 29));
	CHECK_FALSE(o.comparable(3, 8));
	CHECK_THROWS_AS(po_pairs(4, 9), ConfigError);
}
