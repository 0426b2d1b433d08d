#ifndef UDPDA_TRANSFORM_HPP
#define UDPDA_TRANSFORM_HPP

#include <string>
#include <unordered_set>
#include <vector>

#include "core.hpp"
#include "sim.hpp"

namespace udpda {

/// Whether the epsilon run from the initial configuration meets a final state.
inline bool accepts_epsilon(const Dpda& m, Budget b = {}) {
	return accepts(m, 0, b);
}

/// Names used for the copies created by immediate_accept.
struct ImmediateNames {
	std::vector<std::string> tilde; ///< tilde[q] names the debt copy of q
	std::string start;
};

namespace detail {

/// Debt copies are named by appending `~` to every state name. The number of
/// `~` is chosen so that no copy collides with an existing name.
inline ImmediateNames immediate_names(const Dpda& m) {
	std::unordered_set<std::string> taken(m.states().begin(), m.states().end());
	std::string marker = "~";
	for (;;) {
		bool clash = false;
		for (const auto& q : m.states())
			if (taken.contains(q + marker)) {
				clash = true;
				break;
			}
		if (!clash)
			break;
		marker += '~';
	}
	ImmediateNames names;
	for (const auto& q : m.states()) {
		names.tilde.push_back(q + marker);
		taken.insert(names.tilde.back());
	}
	names.start = fresh_name(taken, m.state_name(m.initial()), "'", true);
	return names;
}

} // namespace detail

/// Builds M' with states Q, then the debt copies Q~, then a new initial state.
/// Every input move of M becomes an epsilon move into a debt copy; the debt is
/// paid by reading `a` as soon as a final state is reached, or when M itself
/// wants to read again. A word is accepted by M' iff the state right after its
/// last read is final.
inline Dpda immediate_accept(const Dpda& m, Budget b = {}) {
	const auto n = static_cast<StateId>(m.num_states());
	auto names = detail::immediate_names(m);
	auto tilde = [n](StateId q) { return n + q; };
	const StateId start = 2 * n;

	std::vector<std::string> states = m.states();
	states.insert(states.end(), names.tilde.begin(), names.tilde.end());
	states.push_back(names.start);

	std::vector<bool> finals = m.finals();
	finals.resize(2 * n + 1, false);
	finals[start] = accepts_epsilon(m, b);

	std::vector<Transition> out;
	for (const auto& t : m.transitions()) {
		if (t.tag == InputTag::a)
			out.push_back({t.from, InputTag::eps, t.top, Action::read(tilde(t.action.target))});
		else
			out.push_back(t);
	}
	for (StateId q = 0; q < n; ++q) {
		if (m.is_final(q)) {
			for (SymbolId z = 0; z < m.num_symbols(); ++z)
				out.push_back({tilde(q), InputTag::a, z, Action::read(q)});
			continue;
		}
		for (const auto& t : m.transitions()) {
			if (t.from != q)
				continue;
			Transition c = t;
			c.from = tilde(q);
			c.action.target = tilde(t.action.target);
			out.push_back(c);
		}
	}
	out.push_back({start, InputTag::eps, m.bottom(), Action::read(m.initial())});

	return Dpda(std::move(states), m.symbols(), start, m.bottom(), std::move(finals),
				std::move(out));
}

} // namespace udpda

#endif
