#ifndef UDPDA_SIM_HPP
#define UDPDA_SIM_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "core.hpp"
#include "error.hpp"

namespace udpda {

/// Step limit for a simulation. The default is 2^(n*m)+1, enough for the pump
/// to show up on any machine, capped at a ceiling.
struct Budget {
	static constexpr std::uint64_t default_ceiling = std::uint64_t{1} << 24;

	std::uint64_t max_steps = default_ceiling;

	static Budget for_machine(const Dpda& m, std::uint64_t ceiling = default_ceiling) {
		return {bound_for_size(size(m), ceiling)};
	}

	/// min(2^k + 1, ceiling)
	static std::uint64_t bound_for_size(std::uint64_t k, std::uint64_t ceiling) {
		if (k >= 63)
			return ceiling;
		return std::min((std::uint64_t{1} << k) + 1, ceiling);
	}
};

/// A configuration of a unary dpda. The unread input is a count, so only the
/// consumed length is tracked. `stack` is stored bottom first: `stack.back()`
/// is the top.
struct Configuration {
	StateId state = 0;
	std::uint64_t consumed = 0;
	std::vector<SymbolId> stack;

	static Configuration initial(const Dpda& m) { return {m.initial(), 0, {m.bottom()}}; }

	Mode mode() const { return {state, stack.back()}; }
	std::size_t height() const noexcept { return stack.size(); }

	friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct NeedsInput {
	friend bool operator==(NeedsInput, NeedsInput) = default;
};
struct Halt {
	friend bool operator==(Halt, Halt) = default;
};

using StepResult = std::variant<Configuration, NeedsInput, Halt>;

namespace detail {

inline void apply(const Action& act, Configuration& c) {
	switch (act.kind) {
	case ActionKind::read: break;
	case ActionKind::pop:
		if (c.stack.size() <= 1)
			throw pop_on_bottom();
		c.stack.pop_back();
		break;
	case ActionKind::push: c.stack.push_back(act.pushed); break;
	}
	c.state = act.target;
}

/// Live (mode -> first visit) records for the pumping criterion. A record made
/// at height h stays live until the run drops below h. Records are appended at
/// the current height, so `live_` is sorted by height.
class pump_tracker {
public:
	struct stamp {
		std::uint64_t step;
		std::uint64_t reads;
	};

	explicit pump_tracker(std::size_t modes) : slot_(modes, npos) {}

	/// Returns the earlier visit of `mode` if it is still live, otherwise
	/// records this visit.
	std::optional<stamp> visit(std::size_t mode, std::size_t height, stamp now) {
		if (slot_[mode] != npos)
			return live_[slot_[mode]].when;
		slot_[mode] = live_.size();
		live_.push_back({mode, height, now});
		return std::nullopt;
	}

	void drop_above(std::size_t height) {
		while (!live_.empty() && live_.back().height > height) {
			slot_[live_.back().mode] = npos;
			live_.pop_back();
		}
	}

	void clear() { drop_above(0); }

private:
	static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

	struct entry {
		std::size_t mode;
		std::size_t height;
		stamp when;
	};

	std::vector<std::size_t> slot_;
	std::vector<entry> live_;
};

} // namespace detail

/// One move from `c`. Epsilon moves take precedence; an input move with no
/// input left yields NeedsInput.
inline StepResult step(const Dpda& m, const Configuration& c, bool input_available) {
	auto mv = m.move(c.mode());
	if (!mv)
		return Halt{};
	if (mv->first == InputTag::a && !input_available)
		return NeedsInput{};
	Configuration next = c;
	if (mv->first == InputTag::a)
		++next.consumed;
	detail::apply(mv->second, next);
	return next;
}

/// Brute-force membership of a^k. Every configuration with exactly k symbols
/// consumed is checked for finality. Pump records are reset at every read, so
/// a trigger means an infinite run of epsilon moves. `b` bounds the length of
/// each epsilon stretch between two reads.
inline bool accepts(const Dpda& m, std::uint64_t k, Budget b = {}) {
	Configuration c = Configuration::initial(m);
	detail::pump_tracker tracker(m.num_modes());
	std::uint64_t stretch = 0;
	for (std::uint64_t t = 0;; ++t) {
		if (c.consumed == k && m.is_final(c.state))
			return true;
		const Mode mode = c.mode();
		if (tracker.visit(m.mode_index(mode), c.height(), {t, c.consumed}))
			return false;
		auto mv = m.move(mode);
		if (!mv)
			return false;
		if (mv->first == InputTag::a) {
			if (c.consumed == k)
				return false;
			++c.consumed;
			tracker.clear();
			stretch = 0;
		} else if (++stretch > b.max_steps) {
			throw budget_exceeded(b.max_steps);
		}
		const auto before = c.height();
		detail::apply(mv->second, c);
		if (c.height() < before)
			tracker.drop_above(c.height());
	}
}

/// Stack of modes of the last configuration at each height. Both vectors are
/// topmost first; `established_at[i]` is the step that last wrote entry i.
struct History {
	std::vector<Mode> entries;
	std::vector<std::uint64_t> established_at;

	Mode top() const { return entries.front(); }

	friend bool operator==(const History&, const History&) = default;
};

/// The history after `t` steps of the run on unlimited input.
inline History history_at(const Dpda& m, std::uint64_t t, Budget b = {}) {
	if (t > b.max_steps)
		throw budget_exceeded(b.max_steps);
	Configuration c = Configuration::initial(m);
	// bottom first while simulating
	std::vector<Mode> modes{c.mode()};
	std::vector<std::uint64_t> when{0};
	for (std::uint64_t i = 0; i < t; ++i) {
		auto mv = m.move(c.mode());
		if (!mv)
			throw run_halted(i);
		detail::apply(mv->second, c);
		switch (mv->second.kind) {
		case ActionKind::read:
			modes.back() = c.mode();
			when.back() = i + 1;
			break;
		case ActionKind::push:
			modes.push_back(c.mode());
			when.push_back(i + 1);
			break;
		case ActionKind::pop:
			modes.pop_back();
			when.pop_back();
			modes.back() = c.mode();
			when.back() = i + 1;
			break;
		}
	}
	std::reverse(modes.begin(), modes.end());
	std::reverse(when.begin(), when.end());
	return {std::move(modes), std::move(when)};
}

struct Pumps {
	std::uint64_t mu = 0;
	std::uint64_t lambda = 1;
	friend bool operator==(const Pumps&, const Pumps&) = default;
};

struct Halts {
	std::uint64_t total_steps = 0;
	friend bool operator==(const Halts&, const Halts&) = default;
};

/// Outcome of running a machine on unlimited input.
///
/// `bits[k]` says whether a^k is accepted, i.e. whether a final state occurs
/// among the configurations that have consumed exactly k symbols. For a
/// pumping run with `reads_period` r > 0 the bits cover lengths
/// 0..reads_pre+r and lengths beyond reads_pre repeat with period r. Otherwise
/// the bits cover every length the run can consume and longer inputs are
/// rejected.
struct RunShape {
	std::variant<Pumps, Halts> outcome;
	std::vector<bool> bits;
	std::uint64_t reads_pre = 0;
	std::uint64_t reads_period = 0;

	bool pumps() const noexcept { return std::holds_alternative<Pumps>(outcome); }

	bool accepts(std::uint64_t k) const {
		if (k < bits.size() && (k <= reads_pre || reads_period == 0))
			return bits[k];
		if (reads_period == 0)
			return false;
		return bits[reads_pre + 1 + (k - reads_pre - 1) % reads_period];
	}
};

/// Runs `m` on unlimited input until the pumping criterion fires (same mode at
/// a step i and a later step j, with the run never below height(i) in
/// between) or the machine halts.
inline RunShape detect_pump(const Dpda& m, Budget b = {}) {
	Configuration c = Configuration::initial(m);
	detail::pump_tracker tracker(m.num_modes());
	std::vector<bool> bits{false};
	std::uint64_t reads = 0;

	auto advance = [&](const Action& act, InputTag tag) {
		if (tag == InputTag::a) {
			++reads;
			bits.push_back(false);
		}
		const auto before = c.height();
		detail::apply(act, c);
		if (c.height() < before)
			tracker.drop_above(c.height());
	};

	for (std::uint64_t t = 0;; ++t) {
		const Mode mode = c.mode();
		if (auto earlier = tracker.visit(m.mode_index(mode), c.height(), {t, reads})) {
			RunShape shape;
			const std::uint64_t mu = earlier->step;
			const std::uint64_t lambda = t - mu;
			shape.outcome = Pumps{mu, lambda};
			shape.reads_pre = earlier->reads;
			shape.reads_period = reads - earlier->reads;
			// One more period settles the bits of every length up to
			// reads_pre + reads_period.
			for (std::uint64_t u = 0; u <= lambda; ++u) {
				if (m.is_final(c.state))
					bits[reads] = true;
				auto mv = m.move(c.mode());
				if (u == lambda || !mv)
					break;
				advance(mv->second, mv->first);
			}
			bits.resize(shape.reads_pre + shape.reads_period + 1);
			shape.bits = std::move(bits);
			return shape;
		}
		if (m.is_final(c.state))
			bits[reads] = true;
		auto mv = m.move(mode);
		if (!mv) {
			RunShape shape;
			shape.outcome = Halts{t};
			shape.reads_pre = reads;
			shape.bits = std::move(bits);
			return shape;
		}
		if (t >= b.max_steps)
			throw budget_exceeded(b.max_steps);
		advance(mv->second, mv->first);
	}
}

} // namespace udpda

#endif
