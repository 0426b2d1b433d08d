#include <gtest/gtest.h>

#include "support.hpp"

using namespace udpda;
using support::Hand;

namespace {

Dpda self_push(bool final) {
	Hand h;
	h.st("p");
	h.push("p", "Z", "p", "A").push("p", "A", "p", "A");
	if (final)
		h.final("p");
	return h.build();
}

Dpda single_loop(bool final) {
	Hand h;
	h.read("q", InputTag::a, "Z", "q");
	if (final)
		h.final("q");
	return h.build();
}

/// Trace of (mode, height, action) over the first `steps` steps.
struct Trace {
	std::vector<Mode> modes;
	std::vector<std::size_t> heights;
	std::vector<Action> actions;
};

Trace trace(const Dpda& m, std::size_t steps) {
	Trace tr;
	Configuration c = Configuration::initial(m);
	for (std::size_t t = 0; t < steps; ++t) {
		tr.modes.push_back(c.mode());
		tr.heights.push_back(c.height());
		auto mv = m.move(c.mode());
		if (!mv)
			break;
		tr.actions.push_back(mv->second);
		detail::apply(mv->second, c);
	}
	return tr;
}

bool same_action(const Action& x, const Action& y) {
	return x.kind == y.kind && x.target == y.target && (x.kind != ActionKind::push || x.pushed == y.pushed);
}

} // namespace

TEST(Step, LsTwoInitialPush) {
	Dpda m = gen_ls(2);
	auto r = step(m, Configuration::initial(m), true);
	ASSERT_TRUE(std::holds_alternative<Configuration>(r));
	const auto& c = std::get<Configuration>(r);
	EXPECT_EQ(m.state_name(c.state), "q1");
	ASSERT_EQ(c.stack.size(), 2u);
	EXPECT_EQ(m.symbol_name(c.stack.back()), "A1");
	EXPECT_EQ(m.symbol_name(c.stack.front()), "Z0");
}

TEST(Step, ReadWithoutInputNeedsInput) {
	Dpda m = gen_ls(2);
	Configuration c{*m.find_state("q1"), 0, {m.bottom(), *m.find_symbol("A0")}};
	EXPECT_TRUE(std::holds_alternative<NeedsInput>(step(m, c, false)));
	auto r = step(m, c, true);
	ASSERT_TRUE(std::holds_alternative<Configuration>(r));
	EXPECT_EQ(std::get<Configuration>(r).consumed, 1u);
	EXPECT_EQ(m.state_name(std::get<Configuration>(r).state), "q3");
}

TEST(Step, NoActionHalts) {
	Hand h;
	h.st("q");
	h.sy("Z");
	Dpda m = h.build();
	EXPECT_TRUE(std::holds_alternative<Halt>(step(m, Configuration::initial(m), true)));
}

TEST(Step, PopOnBottomSignalsCorruption) {
	std::vector<Transition> ts{{0, InputTag::eps, 0, Action::pop(0)}};
	Dpda m({"q"}, {"Z"}, 0, 0, {}, ts);
	EXPECT_THROW(step(m, Configuration::initial(m), true), pop_on_bottom);
}

TEST(Accepts, LsTwo) {
	Dpda m = gen_ls(2);
	EXPECT_TRUE(accepts(m, 4));
	EXPECT_FALSE(accepts(m, 5));
	EXPECT_TRUE(accepts(m, 0));
	for (std::uint64_t k = 0; k <= 64; ++k)
		EXPECT_EQ(accepts(m, k), k % 4 == 0) << k;
}

TEST(Accepts, SelfPushLoopTerminates) {
	EXPECT_FALSE(accepts(self_push(false), 0));
	EXPECT_FALSE(accepts(self_push(false), 3));
	EXPECT_TRUE(accepts(self_push(true), 0));
	EXPECT_FALSE(accepts(self_push(true), 1));
}

TEST(Accepts, FinalSeenLateInsideEpsilonStretch) {
	// reads once, then pushes three symbols before reaching the final state
	Hand h;
	h.read("s", InputTag::a, "Z", "p");
	h.push("p", "Z", "p1", "A").push("p1", "A", "p2", "A").push("p2", "A", "f", "A");
	h.final("f");
	Dpda m = h.build();
	EXPECT_FALSE(accepts(m, 0));
	EXPECT_TRUE(accepts(m, 1));
	EXPECT_FALSE(accepts(m, 2));
}

TEST(Accepts, BudgetBoundsEpsilonStretch) {
	Dpda m = gen_ls(4);
	EXPECT_THROW(accepts(m, 16, Budget{2}), budget_exceeded);
	EXPECT_TRUE(accepts(m, 16, Budget{64}));
}

TEST(Accepts, AgreesWithNaiveRunOnCorpus) {
	for (const auto& e : support::corpus()) {
		auto naive = support::naive_run(e.machine, 4000);
		const std::uint64_t known = naive.halted ? naive.bits.size() + 5 : naive.bits.size() - 1;
		for (std::uint64_t k = 0; k < std::min<std::uint64_t>(known, 120); ++k)
			ASSERT_EQ(accepts(e.machine, k), support::naive_accepts(naive, k)) << "seed " << e.seed << " k " << k;
	}
}

TEST(Budget, DefaultBound) {
	EXPECT_EQ(Budget::bound_for_size(3, Budget::default_ceiling), 9u);
	EXPECT_EQ(Budget::bound_for_size(30, Budget::default_ceiling), Budget::default_ceiling);
	EXPECT_EQ(Budget::bound_for_size(100, 77), 77u);
	EXPECT_EQ(Budget::for_machine(gen_ls(1)).max_steps, 4097u);
}

TEST(History, LsOneFirstSteps) {
	Dpda m = gen_ls(1);
	auto mode = [&](const char* q, const char* z) { return Mode{*m.find_state(q), *m.find_symbol(z)}; };
	EXPECT_EQ(history_at(m, 0).entries, (std::vector<Mode>{mode("q0", "Z0")}));
	EXPECT_EQ(history_at(m, 1).entries, (std::vector<Mode>{mode("q1", "A0"), mode("q0", "Z0")}));
	EXPECT_EQ(history_at(m, 2).entries, (std::vector<Mode>{mode("q3", "A0"), mode("q0", "Z0")}));
	EXPECT_EQ(history_at(m, 2).established_at, (std::vector<std::uint64_t>{2, 0}));
}

TEST(History, HaltedRunAndBudget) {
	Hand h;
	h.read("q", InputTag::a, "Z", "p");
	Dpda m = h.build();
	EXPECT_NO_THROW(history_at(m, 1));
	EXPECT_THROW(history_at(m, 2), run_halted);
	EXPECT_THROW(history_at(gen_ls(2), 10, Budget{5}), budget_exceeded);
}

TEST(History, EntriesTrackStackAndTimesIncrease) {
	for (const auto& e : support::corpus()) {
		auto tr = trace(e.machine, 40);
		for (std::size_t t = 0; t < tr.modes.size(); ++t) {
			auto h = history_at(e.machine, t);
			ASSERT_EQ(h.entries.size(), tr.heights[t]);
			EXPECT_EQ(h.top(), tr.modes[t]);
			EXPECT_EQ(h.entries.back().top, e.machine.bottom());
			for (std::size_t i = 0; i + 1 < h.established_at.size(); ++i)
				EXPECT_GT(h.established_at[i], h.established_at[i + 1]);
		}
	}
}

// For each height i, h_{t_i} is the bottom i entries of every later history
// until the height drops below i.
TEST(History, EstablishedHistoriesAreSuffixes) {
	std::vector<Dpda> machines{gen_ls(1), gen_ls(2), gen_ls(3)};
	for (std::size_t i = 0; i < 60; ++i)
		machines.push_back(support::corpus()[i * 7].machine);
	for (const auto& m : machines) {
		auto tr = trace(m, 120);
		std::vector<History> snaps;
		for (std::size_t t = 0; t < tr.modes.size(); ++t)
			snaps.push_back(history_at(m, t));
		for (std::size_t t = 0; t < snaps.size(); ++t) {
			const auto& h = snaps[t];
			const auto height = h.entries.size();
			for (std::size_t i = 1; i <= height; ++i) {
				const auto ti = h.established_at[height - i];
				const auto& earlier = snaps[ti];
				ASSERT_EQ(earlier.entries.size(), i);
				EXPECT_TRUE(std::equal(earlier.entries.begin(), earlier.entries.end(), h.entries.end() - static_cast<std::ptrdiff_t>(i)));
			}
		}
	}
}

TEST(History, RepeatsAfterEqualFullHistories) {
	Dpda m = gen_ls(2);
	auto shape = detect_pump(m, Budget::for_machine(m));
	ASSERT_TRUE(shape.pumps());
	const auto p = std::get<Pumps>(shape.outcome);
	ASSERT_EQ(history_at(m, p.mu).entries, history_at(m, p.mu + p.lambda).entries);
	for (std::uint64_t i = 0; i <= 3 * p.lambda; ++i)
		EXPECT_EQ(history_at(m, p.mu + i).entries, history_at(m, p.mu + p.lambda + i).entries) << i;
}

TEST(DetectPump, LsOneCycle) {
	Dpda m = gen_ls(1);
	auto shape = detect_pump(m, Budget::for_machine(m));
	ASSERT_TRUE(shape.pumps());
	const auto p = std::get<Pumps>(shape.outcome);
	EXPECT_EQ(p.mu, 0u);
	EXPECT_EQ(p.lambda, 7u);
	EXPECT_EQ(shape.reads_pre, 0u);
	EXPECT_EQ(shape.reads_period, 2u);

	// q0 -> q1 -> q3 -> q2 -> q1 -> q3 -> q3 -> q0, back at height 1
	auto tr = trace(m, 8);
	const char* expected[] = {"q0", "q1", "q3", "q2", "q1", "q3", "q3", "q0"};
	for (std::size_t t = 0; t < 8; ++t)
		EXPECT_EQ(m.state_name(tr.modes[t].state), expected[t]) << t;
	EXPECT_EQ(tr.modes[0], tr.modes[7]);
	EXPECT_EQ(tr.heights[0], tr.heights[7]);
	for (std::size_t t = 1; t < 7; ++t)
		EXPECT_GE(tr.heights[t], tr.heights[0]);
	for (std::size_t i = 1; i < 7; ++i)
		for (std::size_t j = i + 1; j < 7; ++j)
			EXPECT_FALSE(tr.modes[i] == tr.modes[j] && tr.heights[i] <= tr.heights[j]) << i << ' ' << j;
}

TEST(DetectPump, SelfLoopOnRead) {
	auto shape = detect_pump(single_loop(false));
	ASSERT_TRUE(shape.pumps());
	EXPECT_EQ(std::get<Pumps>(shape.outcome).mu, 0u);
	EXPECT_EQ(std::get<Pumps>(shape.outcome).lambda, 1u);
	for (std::uint64_t k = 0; k < 20; ++k)
		EXPECT_FALSE(shape.accepts(k));
}

TEST(DetectPump, NoTransitionsHaltsImmediately) {
	Hand h;
	h.final("q").sy("Z");
	auto shape = detect_pump(h.build());
	ASSERT_FALSE(shape.pumps());
	EXPECT_EQ(std::get<Halts>(shape.outcome).total_steps, 0u);
	EXPECT_EQ(shape.bits, std::vector<bool>{true});
}

TEST(DetectPump, HaltingModeHasNoMove) {
	for (const auto& e : support::corpus()) {
		auto shape = detect_pump(e.machine, Budget::for_machine(e.machine));
		if (shape.pumps())
			continue;
		const auto total = std::get<Halts>(shape.outcome).total_steps;
		auto tr = trace(e.machine, total + 2);
		ASSERT_EQ(tr.modes.size(), total + 1);
		EXPECT_FALSE(e.machine.move(tr.modes.back()));
	}
}

// The trigger is sound: after a detected pump the action sequence repeats.
TEST(DetectPump, TriggerIsSoundOnCorpus) {
	for (const auto& e : support::corpus()) {
		auto shape = detect_pump(e.machine, Budget::for_machine(e.machine));
		if (!shape.pumps())
			continue;
		const auto p = std::get<Pumps>(shape.outcome);
		auto tr = trace(e.machine, p.mu + 5 * p.lambda + 1);
		ASSERT_EQ(tr.modes[p.mu], tr.modes[p.mu + p.lambda]) << e.seed;
		ASSERT_LE(tr.heights[p.mu], tr.heights[p.mu + p.lambda]);
		for (auto t = p.mu; t <= p.mu + p.lambda; ++t)
			ASSERT_GE(tr.heights[t], tr.heights[p.mu]);
		for (std::uint64_t u = 0; u < 3 * p.lambda; ++u)
			ASSERT_TRUE(same_action(tr.actions[p.mu + u], tr.actions[p.mu + p.lambda + u])) << e.seed << " u " << u;
		// and the mode sequence m_t is periodic
		for (auto t = p.mu; t <= p.mu + 2 * p.lambda; ++t)
			EXPECT_EQ(history_at(e.machine, t).top(), history_at(e.machine, t + p.lambda).top());
	}
}

// It is also the first such pair.
TEST(DetectPump, TriggerIsEarliest) {
	for (const auto& e : support::corpus()) {
		auto shape = detect_pump(e.machine, Budget::for_machine(e.machine));
		if (!shape.pumps())
			continue;
		const auto p = std::get<Pumps>(shape.outcome);
		const auto j0 = p.mu + p.lambda;
		auto tr = trace(e.machine, j0 + 1);
		for (std::size_t j = 0; j < j0; ++j)
			for (std::size_t i = 0; i < j; ++i) {
				if (!(tr.modes[i] == tr.modes[j]) || tr.heights[j] < tr.heights[i])
					continue;
				bool dip = false;
				for (auto t = i; t <= j; ++t)
					dip = dip || tr.heights[t] < tr.heights[i];
				EXPECT_TRUE(dip) << e.seed << " earlier pair " << i << ',' << j;
			}
	}
}

TEST(DetectPump, BitsAgreeWithAccepts) {
	for (const auto& e : support::corpus()) {
		auto shape = detect_pump(e.machine, Budget::for_machine(e.machine));
		const auto limit = shape.reads_pre + 3 * std::max<std::uint64_t>(shape.reads_period, 1) + 3;
		for (std::uint64_t k = 0; k <= limit; ++k)
			ASSERT_EQ(shape.accepts(k), accepts(e.machine, k)) << e.seed << " k " << k;
	}
}

TEST(DetectPump, BudgetExceeded) {
	EXPECT_THROW(detect_pump(gen_ls(3), Budget{4}), budget_exceeded);
}
