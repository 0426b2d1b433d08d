#include <gtest/gtest.h>

#include "support.hpp"

using namespace udpda;
using support::Hand;

namespace {

// Reaches the final f after three pushes, before any read.
Dpda late_final() {
	Hand h;
	h.push("s", "Z", "p1", "A").push("p1", "A", "p2", "A").push("p2", "A", "f", "A");
	h.read("f", InputTag::a, "A", "f");
	h.final("f");
	return h.build();
}

} // namespace

TEST(AcceptsEpsilon, Examples) {
	EXPECT_TRUE(accepts_epsilon(gen_ls(2)));
	Hand h;
	h.read("q", InputTag::a, "Z", "p");
	EXPECT_FALSE(accepts_epsilon(h.build()));
	EXPECT_TRUE(accepts_epsilon(late_final()));
	EXPECT_EQ(accepts_epsilon(late_final()), accepts(late_final(), 0));
}

TEST(Immediate, LsTwo) {
	Dpda m = gen_ls(2);
	Dpda i = immediate_accept(m);
	EXPECT_EQ(i.num_states(), 9u);
	EXPECT_EQ(i.num_symbols(), m.num_symbols());
	EXPECT_TRUE(validate(i).empty());
	for (std::uint64_t k = 0; k <= 100; ++k)
		EXPECT_EQ(accepts(i, k), accepts(m, k)) << k;
	EXPECT_EQ(i.state_name(i.initial()), "q0'");
	EXPECT_TRUE(i.find_state("q3~"));
}

TEST(Immediate, StartIsFinalWhenEpsilonAccepted) {
	Dpda m = late_final();
	ASSERT_FALSE(m.is_final(m.initial()));
	Dpda i = immediate_accept(m);
	EXPECT_TRUE(i.is_final(i.initial()));
	EXPECT_TRUE(accepts(i, 0));
}

TEST(Immediate, FinalsUnchangedWhenEpsilonRejected) {
	Hand h;
	h.read("q", InputTag::a, "Z", "p").read("p", InputTag::a, "Z", "q");
	h.final("p");
	Dpda m = h.build();
	Dpda i = immediate_accept(m);
	for (StateId q = 0; q < i.num_states(); ++q)
		EXPECT_EQ(i.is_final(q), q < m.num_states() && m.is_final(q)) << i.state_name(q);
}

TEST(Immediate, NoInputMovesOutsideTildeStates) {
	Dpda m = gen_ls(3);
	Dpda i = immediate_accept(m);
	const auto n = m.num_states();
	for (const auto& t : i.transitions())
		if (t.tag == InputTag::a) {
			EXPECT_GE(t.from, n);
		}
	// final tilde copies only pay the debt
	for (StateId q = 0; q < n; ++q)
		if (m.is_final(q))
			for (SymbolId z = 0; z < m.num_symbols(); ++z) {
				const Action* a = i.action(static_cast<StateId>(n + q), InputTag::a, z);
				ASSERT_NE(a, nullptr);
				EXPECT_EQ(a->target, q);
				EXPECT_EQ(i.action(static_cast<StateId>(n + q), InputTag::eps, z), nullptr);
			}
}

TEST(Immediate, NamesAvoidCollisions) {
	Hand h;
	h.read("q", InputTag::a, "Z", "q~").read("q~", InputTag::a, "Z", "q'");
	h.final("q~");
	Dpda m = h.build();
	Dpda i = immediate_accept(m);
	EXPECT_EQ(i.num_states(), 2 * m.num_states() + 1);
	std::set<std::string> names(i.states().begin(), i.states().end());
	EXPECT_EQ(names.size(), i.num_states());
	EXPECT_EQ(parse_dpda(render_dpda(i)), i);
	for (std::uint64_t k = 0; k <= 20; ++k)
		EXPECT_EQ(accepts(i, k), accepts(m, k));
}

TEST(Immediate, CorpusProperties) {
	for (const auto& e : support::corpus()) {
		const auto& m = e.machine;
		Dpda i = immediate_accept(m);
		ASSERT_EQ(i.num_states(), 2 * e.n + 1);
		ASSERT_TRUE(validate(i).empty()) << e.seed;
		for (std::uint64_t k = 0; k <= 500; ++k)
			ASSERT_EQ(accepts(i, k), accepts(m, k)) << e.seed << " k " << k;

		auto post = support::post_read_states(i, 200);
		for (std::size_t k = 1; k <= 200; ++k) {
			const bool acc = accepts(m, k);
			if (k <= post.size())
				ASSERT_EQ(i.is_final(post[k - 1]), acc) << e.seed << " k " << k;
			else
				ASSERT_FALSE(acc) << e.seed << " k " << k;
		}

		// Reads leave only tilde states; those entering finals pay the debt.
		const auto n = e.n;
		for (const auto& t : i.transitions()) {
			if (t.tag == InputTag::a) {
				EXPECT_GE(t.from, n);
				EXPECT_LT(t.from, 2 * n);
			}
			const bool from_tilde = t.from >= n && t.from < 2 * n;
			if (from_tilde && i.is_final(t.action.target)) {
				EXPECT_TRUE(t.tag == InputTag::a && t.action.kind == ActionKind::read) << e.seed;
			}
		}
	}
}
