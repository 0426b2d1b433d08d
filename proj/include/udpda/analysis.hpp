#ifndef UDPDA_ANALYSIS_HPP
#define UDPDA_ANALYSIS_HPP

// Static per-mode analysis. Each mode [qA] is evaluated by following the run
// from (q, A) until A is popped. The recursion revisits a mode that is still
// being evaluated only when the run returns to that mode without ever dropping
// below it, which by the pumping criterion means the run never ends.

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "core.hpp"
#include "error.hpp"

namespace udpda {

struct EpsBehavior {
	enum class Kind : std::uint8_t {
		pops,        ///< the epsilon run pops the top; `exit` is the state after the pop
		needs_input, ///< stops at `blocker`, which wants to read
		dead,        ///< stops at `blocker`, which has no move
		loops,       ///< the epsilon run never stops
	};

	Kind kind = Kind::dead;
	StateId exit = 0;
	Mode blocker{};

	static EpsBehavior pops(StateId p) { return {Kind::pops, p, {}}; }
	static EpsBehavior needs_input(Mode m) { return {Kind::needs_input, 0, m}; }
	static EpsBehavior dead(Mode m) { return {Kind::dead, 0, m}; }
	static EpsBehavior loops() { return {Kind::loops, 0, {}}; }

	friend bool operator==(const EpsBehavior&, const EpsBehavior&) = default;
};

namespace detail {

class segment_solver {
public:
	/// With `reads_pass` set, input moves are followed like epsilon moves.
	segment_solver(const Dpda& m, bool reads_pass)
		: m_(m), reads_pass_(reads_pass), result_(m), status_(m, unvisited) {}

	EpsBehavior eval(Mode x) {
		if (status_[x] == done)
			return result_[x];
		if (status_[x] == in_progress)
			return EpsBehavior::loops();
		status_[x] = in_progress;
		EpsBehavior r = compute(x);
		result_[x] = r;
		status_[x] = done;
		return r;
	}

	ModeTable<EpsBehavior> table() {
		for (std::size_t i = 0; i < m_.num_modes(); ++i)
			eval(m_.mode_at(i));
		return result_;
	}

private:
	enum : std::uint8_t { unvisited, in_progress, done };

	EpsBehavior compute(Mode x) {
		const Action* act = m_.action(x.state, InputTag::eps, x.top);
		if (!act) {
			act = m_.action(x.state, InputTag::a, x.top);
			if (!act)
				return EpsBehavior::dead(x);
			if (!reads_pass_)
				return EpsBehavior::needs_input(x);
		}
		switch (act->kind) {
		case ActionKind::read: return eval({act->target, x.top});
		case ActionKind::pop: return EpsBehavior::pops(act->target);
		case ActionKind::push: {
			EpsBehavior inner = eval({act->target, act->pushed});
			if (inner.kind != EpsBehavior::Kind::pops)
				return inner;
			return eval({inner.exit, x.top});
		}
		}
		return EpsBehavior::dead(x);
	}

	const Dpda& m_;
	bool reads_pass_;
	ModeTable<EpsBehavior> result_;
	ModeTable<std::uint8_t> status_;
};

} // namespace detail

/// How the epsilon-only run from (q, A) ends, for every mode [qA].
inline ModeTable<EpsBehavior> eps_behavior(const Dpda& m) {
	return detail::segment_solver(m, false).table();
}

using ExitTable = ModeTable<std::optional<StateId>>;

/// exit[qA]: the state in which the run from (q, A), reading as much input as
/// it wants, pops A. Undefined when that never happens.
inline ExitTable exit_table(const Dpda& m) {
	auto segments = detail::segment_solver(m, true).table();
	ExitTable out(m);
	for (std::size_t i = 0; i < m.num_modes(); ++i) {
		Mode x = m.mode_at(i);
		if (segments[x].kind == EpsBehavior::Kind::pops)
			out[x] = segments[x].exit;
	}
	return out;
}

/// For every looping mode, whether its infinite epsilon run meets a final
/// state. Other modes have no entry.
class LoopFinality {
public:
	LoopFinality(const Dpda& m, ModeTable<std::optional<bool>> table)
		: m_(&m), table_(std::move(table)) {}

	bool at(Mode x) const {
		const auto& v = table_[x];
		if (!v)
			throw undefined_for_mode("mode " + m_->mode_name(x) + " does not loop");
		return *v;
	}

	bool defined(Mode x) const { return table_[x].has_value(); }

private:
	const Dpda* m_;
	ModeTable<std::optional<bool>> table_;
};

namespace detail {

/// Whether a final state occurs in the epsilon segment of a popping mode,
/// counting the state entered by the final pop.
class segment_final {
public:
	segment_final(const Dpda& m, const ModeTable<EpsBehavior>& eps)
		: m_(m), eps_(eps), memo_(m) {}

	bool eval(Mode x) {
		if (memo_[x])
			return *memo_[x];
		bool r = m_.is_final(x.state);
		if (!r) {
			const Action* act = m_.action(x.state, InputTag::eps, x.top);
			switch (act->kind) {
			case ActionKind::read: r = eval({act->target, x.top}); break;
			case ActionKind::pop: r = m_.is_final(act->target); break;
			case ActionKind::push: {
				Mode inner{act->target, act->pushed};
				r = eval(inner) || eval({eps_[inner].exit, x.top});
				break;
			}
			}
		}
		memo_[x] = r;
		return r;
	}

private:
	const Dpda& m_;
	const ModeTable<EpsBehavior>& eps_;
	ModeTable<std::optional<bool>> memo_;
};

} // namespace detail

inline LoopFinality loop_visits_final(const Dpda& m, const ModeTable<EpsBehavior>& eps) {
	using Kind = EpsBehavior::Kind;
	detail::segment_final seg(m, eps);
	ModeTable<std::optional<bool>> out(m);

	// Successors of a looping mode in the dependency graph, plus whether the
	// node itself carries a final state.
	auto expand = [&](Mode x, std::vector<Mode>& next) {
		bool carries = m.is_final(x.state);
		const Action* act = m.action(x.state, InputTag::eps, x.top);
		switch (act->kind) {
		case ActionKind::read: next.push_back({act->target, x.top}); break;
		case ActionKind::pop: break;
		case ActionKind::push: {
			Mode inner{act->target, act->pushed};
			if (eps[inner].kind == Kind::loops) {
				next.push_back(inner);
			} else {
				carries = carries || seg.eval(inner);
				next.push_back({eps[inner].exit, x.top});
			}
			break;
		}
		}
		return carries;
	};

	for (std::size_t i = 0; i < m.num_modes(); ++i) {
		Mode start = m.mode_at(i);
		if (eps[start].kind != Kind::loops)
			continue;
		std::vector<Mode> work{start};
		std::unordered_set<std::size_t> seen{i};
		bool found = false;
		while (!work.empty() && !found) {
			Mode x = work.back();
			work.pop_back();
			std::vector<Mode> next;
			found = expand(x, next);
			for (Mode y : next)
				if (seen.insert(m.mode_index(y)).second)
					work.push_back(y);
		}
		out[start] = found;
	}
	return LoopFinality(m, std::move(out));
}

inline LoopFinality loop_visits_final(const Dpda& m) {
	return loop_visits_final(m, eps_behavior(m));
}

/// Redirects every looping mode to one of two fresh halting states, a final
/// one when the loop would have met a final state. Machines without looping
/// modes are returned unchanged.
inline Dpda make_loop_free(const Dpda& m) {
	auto eps = eps_behavior(m);
	auto finality = loop_visits_final(m, eps);

	std::vector<bool> redirect_to_accept(m.num_modes());
	bool need_acc = false, need_rej = false;
	std::vector<Mode> looping;
	for (std::size_t i = 0; i < m.num_modes(); ++i) {
		Mode x = m.mode_at(i);
		if (eps[x].kind != EpsBehavior::Kind::loops)
			continue;
		looping.push_back(x);
		redirect_to_accept[i] = finality.at(x);
		(redirect_to_accept[i] ? need_acc : need_rej) = true;
	}
	if (looping.empty())
		return m;

	auto states = m.states();
	auto finals = m.finals();
	std::unordered_set<std::string> taken(states.begin(), states.end());
	StateId acc = 0, rej = 0;
	if (need_acc) {
		states.push_back(detail::fresh_name(taken, "accHalt", "'"));
		taken.insert(states.back());
		finals.push_back(true);
		acc = static_cast<StateId>(states.size() - 1);
	}
	if (need_rej) {
		states.push_back(detail::fresh_name(taken, "rejHalt", "'"));
		finals.push_back(false);
		rej = static_cast<StateId>(states.size() - 1);
	}

	auto transitions = m.transitions();
	for (auto& t : transitions) {
		if (t.tag != InputTag::eps || t.from >= m.num_states() || t.top >= m.num_symbols())
			continue;
		Mode x{t.from, t.top};
		if (eps[x].kind != EpsBehavior::Kind::loops)
			continue;
		t.action = Action::read(redirect_to_accept[m.mode_index(x)] ? acc : rej);
	}
	return Dpda(std::move(states), m.symbols(), m.initial(), m.bottom(), std::move(finals),
				std::move(transitions));
}

} // namespace udpda

#endif
