#include "qartin/fp2.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qartin;

namespace {

u64 brute_order(const Fp2Elem &a)
{
	Fp2Elem x = a;
	for (u64 n = 1;; ++n)
	{
		if (x.is_one())
			return n;
		x = x * a;
	}
}

} // namespace

TEST(Fp2Context, RequiresInertPrime)
{
	FieldContext f(5);
	EXPECT_NO_THROW(Fp2Context(7, f));
	EXPECT_THROW(Fp2Context(11, f), std::invalid_argument);
	EXPECT_THROW(Fp2Context(5, f), std::invalid_argument);
	Fp2Context c(7, f);
	EXPECT_EQ(c.group_order(), 48u);
	EXPECT_EQ(c.fact_group().product(), 48u);
}

TEST(Fp2, FieldArithmetic)
{
	FieldContext f(2);
	Fp2Context c(5, f); // (2/5) = -1
	auto s = fp2_make(c, 0, 1);
	EXPECT_EQ(s * s, fp2_make(c, 2));
	auto a = fp2_make(c, 3, 4);
	EXPECT_TRUE((a * inverse(a)).is_one());
	EXPECT_THROW(inverse(fp2_make(c, 0)), std::domain_error);
	Fp2Context other(3, f);
	EXPECT_THROW(mul(a, fp2_make(other, 1, 1)), std::invalid_argument);
}

TEST(Fp2, OrderMatchesBruteForceForAllElements)
{
	for (i64 d : {2, 3, 5})
	{
		FieldContext f(d);
		for (u64 p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u})
		{
			if (static_cast<u64>(d) % p == 0 || !is_inert(p, f))
				continue;
			Fp2Context c(p, f);
			for (u64 x = 0; x < p; ++x)
				for (u64 y = 0; y < p; ++y)
				{
					if (x == 0 && y == 0)
						continue;
					auto a = fp2_make(c, x, y);
					ASSERT_EQ(mult_order(a, c), brute_order(a)) << p << " " << x << " " << y;
				}
		}
	}
}

TEST(Fp2, FrobeniusIsConjugationOnRandomElements)
{
	std::mt19937_64 rng(23);
	FieldContext f(13);
	const PrimeTable primes_p(3000);
	for (u64 p : primes_p.range(3, 3000))
	{
		if (p == 13 || !is_inert(p, f))
			continue;
		Fp2Context c(p, f);
		for (int it = 0; it < 5; ++it)
		{
			QuadInt a(f, static_cast<i64>(rng() % 2001) - 1000, static_cast<i64>(rng() % 2001) - 1000);
			auto r = reduce(a, c);
			ASSERT_EQ(pow(r, p), reduce(conjugate(a), c));
			ASSERT_EQ(frobenius(r), reduce(conjugate(a), c));
			if (!r.is_zero())
			{
				ASSERT_EQ(pow(r, p + 1), fp2_make(c, fp2_norm(r)));
			}
		}
	}
}

TEST(OrderRecord, SmallExample)
{
	FieldContext f(5);
	Fp2Context c(7, f);
	auto r = order_record(QuadInt(f, 2, 1), c);
	EXPECT_EQ(r.p, 7u);
	EXPECT_EQ(r.ord_N, 2u); // N = -1
	EXPECT_EQ(r.ord_alpha * r.index(), 48u);
	EXPECT_EQ(r.attained, attains_threshold(r.ord_alpha, 7));
	EXPECT_THROW(order_record(QuadInt(f, 7, 0), c), std::domain_error);
}

TEST(OrderRecord, RationalElementHasTrivialRatio)
{
	FieldContext f(5);
	for (u64 p : {7u, 13u, 17u, 23u})
	{
		auto r = order_record(QuadInt(f, 3, 0), Fp2Context(p, f));
		EXPECT_EQ(r.ord_M, 1u);
		EXPECT_EQ(r.ord_alpha, mult_order_fp(3, Fp2Context(p, f)));
	}
}

TEST(AttainsThreshold, ExactIntegerComparison)
{
	// p = 7: (p^2 - 1)/24 = 2
	EXPECT_TRUE(attains_threshold(2, 7));
	EXPECT_FALSE(attains_threshold(1, 7));
	// p = 11: 120/24 = 5
	EXPECT_TRUE(attains_threshold(5, 11));
	EXPECT_FALSE(attains_threshold(4, 11));
}
