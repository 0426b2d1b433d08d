#ifndef UDPDA_CORE_HPP
#define UDPDA_CORE_HPP

// Machine model for unary deterministic pushdown automata in normal form:
// the bottom symbol is never pushed or popped, reads leave the stack alone,
// and a push adds exactly one symbol. Acceptance is by final state.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "detail/lines.hpp"
#include "error.hpp"

namespace udpda {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;

/// Input label of a transition: an epsilon move or a move reading `a`.
enum class InputTag : std::uint8_t { eps, a };

enum class ActionKind : std::uint8_t { read, pop, push };

struct Action {
	ActionKind kind = ActionKind::read;
	StateId target = 0;
	SymbolId pushed = 0; ///< only meaningful for push

	static constexpr Action read(StateId p) { return {ActionKind::read, p, 0}; }
	static constexpr Action pop(StateId p) { return {ActionKind::pop, p, 0}; }
	static constexpr Action push(StateId p, SymbolId b) { return {ActionKind::push, p, b}; }

	friend bool operator==(const Action&, const Action&) = default;
};

struct Transition {
	StateId from = 0;
	InputTag tag = InputTag::eps;
	SymbolId top = 0;
	Action action;

	friend bool operator==(const Transition&, const Transition&) = default;
};

/// State plus stack top. In a unary dpda it fixes the next move.
struct Mode {
	StateId state = 0;
	SymbolId top = 0;

	friend auto operator<=>(const Mode&, const Mode&) = default;
};

class Dpda {
public:
	Dpda() = default;

	Dpda(std::vector<std::string> states, std::vector<std::string> symbols, StateId initial,
		 SymbolId bottom, std::vector<bool> finals, std::vector<Transition> transitions)
		: states_(std::move(states)), symbols_(std::move(symbols)), initial_(initial),
		  bottom_(bottom), finals_(std::move(finals)), transitions_(std::move(transitions)) {
		finals_.resize(states_.size(), false);
		for (StateId q = 0; q < states_.size(); ++q)
			state_index_.emplace(states_[q], q);
		for (SymbolId z = 0; z < symbols_.size(); ++z)
			symbol_index_.emplace(symbols_[z], z);
		table_.assign(states_.size() * symbols_.size() * 2, -1);
		for (std::size_t i = 0; i < transitions_.size(); ++i) {
			const auto& t = transitions_[i];
			if (t.from >= states_.size() || t.top >= symbols_.size())
				continue;
			auto& slot = table_[slot_of(t.from, t.tag, t.top)];
			if (slot < 0)
				slot = static_cast<std::int32_t>(i);
		}
	}

	std::size_t num_states() const noexcept { return states_.size(); }
	std::size_t num_symbols() const noexcept { return symbols_.size(); }
	std::size_t num_modes() const noexcept { return states_.size() * symbols_.size(); }

	const std::vector<std::string>& states() const noexcept { return states_; }
	const std::vector<std::string>& symbols() const noexcept { return symbols_; }
	const std::string& state_name(StateId q) const { return states_.at(q); }
	const std::string& symbol_name(SymbolId z) const { return symbols_.at(z); }

	StateId initial() const noexcept { return initial_; }
	SymbolId bottom() const noexcept { return bottom_; }
	bool is_final(StateId q) const { return q < finals_.size() && finals_[q]; }
	const std::vector<bool>& finals() const noexcept { return finals_; }
	const std::vector<Transition>& transitions() const noexcept { return transitions_; }

	std::optional<StateId> find_state(std::string_view name) const {
		auto it = state_index_.find(std::string(name));
		return it == state_index_.end() ? std::nullopt : std::optional(it->second);
	}
	std::optional<SymbolId> find_symbol(std::string_view name) const {
		auto it = symbol_index_.find(std::string(name));
		return it == symbol_index_.end() ? std::nullopt : std::optional(it->second);
	}

	/// The first declared action under (q, tag, z), or null.
	const Action* action(StateId q, InputTag tag, SymbolId z) const {
		if (q >= states_.size() || z >= symbols_.size())
			return nullptr;
		auto slot = table_[slot_of(q, tag, z)];
		return slot < 0 ? nullptr : &transitions_[static_cast<std::size_t>(slot)].action;
	}

	/// The unique move of a mode; epsilon moves take precedence.
	std::optional<std::pair<InputTag, Action>> move(Mode m) const {
		if (auto* e = action(m.state, InputTag::eps, m.top))
			return std::pair{InputTag::eps, *e};
		if (auto* r = action(m.state, InputTag::a, m.top))
			return std::pair{InputTag::a, *r};
		return std::nullopt;
	}

	std::size_t mode_index(Mode m) const noexcept {
		return static_cast<std::size_t>(m.state) * symbols_.size() + m.top;
	}
	Mode mode_at(std::size_t index) const noexcept {
		return {static_cast<StateId>(index / symbols_.size()),
				static_cast<SymbolId>(index % symbols_.size())};
	}

	std::string mode_name(Mode m) const {
		return "[" + state_name(m.state) + " " + symbol_name(m.top) + "]";
	}

	/// Structural equality: names, initial, bottom, finals and the ordered
	/// transition list.
	friend bool operator==(const Dpda& x, const Dpda& y) {
		return std::tie(x.states_, x.symbols_, x.initial_, x.bottom_, x.finals_, x.transitions_) ==
			   std::tie(y.states_, y.symbols_, y.initial_, y.bottom_, y.finals_, y.transitions_);
	}

private:
	std::size_t slot_of(StateId q, InputTag tag, SymbolId z) const noexcept {
		return (static_cast<std::size_t>(q) * symbols_.size() + z) * 2 +
			   (tag == InputTag::a ? 1 : 0);
	}

	std::vector<std::string> states_;
	std::vector<std::string> symbols_;
	StateId initial_ = 0;
	SymbolId bottom_ = 0;
	std::vector<bool> finals_;
	std::vector<Transition> transitions_;
	std::unordered_map<std::string, StateId> state_index_;
	std::unordered_map<std::string, SymbolId> symbol_index_;
	std::vector<std::int32_t> table_;
};

/// Incremental construction of a Dpda. Names must be unique per kind.
class DpdaBuilder {
public:
	StateId add_state(std::string name, bool final = false) {
		if (!state_names_.insert(name).second)
			throw std::invalid_argument("duplicate state " + name);
		states_.push_back(std::move(name));
		finals_.push_back(final);
		return static_cast<StateId>(states_.size() - 1);
	}

	SymbolId add_symbol(std::string name) {
		if (!symbol_names_.insert(name).second)
			throw std::invalid_argument("duplicate stack symbol " + name);
		symbols_.push_back(std::move(name));
		return static_cast<SymbolId>(symbols_.size() - 1);
	}

	DpdaBuilder& set_final(StateId q, bool final = true) {
		finals_.at(q) = final;
		return *this;
	}
	DpdaBuilder& set_initial(StateId q) {
		initial_ = q;
		return *this;
	}
	DpdaBuilder& set_bottom(SymbolId z) {
		bottom_ = z;
		return *this;
	}

	DpdaBuilder& add(Transition t) {
		transitions_.push_back(t);
		return *this;
	}
	DpdaBuilder& read(StateId q, InputTag tag, SymbolId z, StateId p) {
		return add({q, tag, z, Action::read(p)});
	}
	DpdaBuilder& pop(StateId q, SymbolId z, StateId p) {
		return add({q, InputTag::eps, z, Action::pop(p)});
	}
	DpdaBuilder& push(StateId q, SymbolId z, StateId p, SymbolId b) {
		return add({q, InputTag::eps, z, Action::push(p, b)});
	}

	const std::unordered_set<std::string>& state_names() const noexcept { return state_names_; }

	Dpda build() const {
		return Dpda(states_, symbols_, initial_, bottom_, finals_, transitions_);
	}

private:
	std::vector<std::string> states_;
	std::vector<std::string> symbols_;
	std::vector<bool> finals_;
	std::unordered_set<std::string> state_names_;
	std::unordered_set<std::string> symbol_names_;
	StateId initial_ = 0;
	SymbolId bottom_ = 0;
	std::vector<Transition> transitions_;
};

/// Dense per-mode storage, indexed like Dpda::mode_index.
template <typename T>
class ModeTable {
public:
	ModeTable() = default;
	ModeTable(const Dpda& m, T init = T{}) : stride_(m.num_symbols()), cells_(m.num_modes(), init) {}

	T& operator[](Mode m) { return cells_[index(m)]; }
	const T& operator[](Mode m) const { return cells_[index(m)]; }
	std::size_t size() const noexcept { return cells_.size(); }

private:
	std::size_t index(Mode m) const { return static_cast<std::size_t>(m.state) * stride_ + m.top; }

	std::size_t stride_ = 0;
	std::vector<T> cells_;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
	determinism_eps_and_read, ///< an eps move and an `a` move share a mode
	determinism_duplicate,    ///< two actions under one (state, tag, symbol)
	normal_form,              ///< push or pop tagged with `a`
	bottom_discipline,        ///< bottom symbol pushed, or popped off
	undeclared,               ///< an identifier outside the declared ranges
};

inline std::string_view to_string(ViolationKind k) {
	switch (k) {
	case ViolationKind::determinism_eps_and_read: return "determinism-1";
	case ViolationKind::determinism_duplicate: return "determinism-2";
	case ViolationKind::normal_form: return "normal-form";
	case ViolationKind::bottom_discipline: return "bottom-discipline";
	case ViolationKind::undeclared: return "undeclared";
	}
	return "?";
}

struct TransitionKey {
	StateId state = 0;
	InputTag tag = InputTag::eps;
	SymbolId symbol = 0;

	friend auto operator<=>(const TransitionKey&, const TransitionKey&) = default;
};

struct Violation {
	ViolationKind kind;
	std::optional<TransitionKey> location;
	std::string message;
};

namespace detail {

inline std::string describe_key(const Dpda& m, const TransitionKey& k) {
	auto name = [](const std::vector<std::string>& names, std::uint32_t i) {
		return i < names.size() ? names[i] : "#" + std::to_string(i);
	};
	return "(" + name(m.states(), k.state) + ", " + (k.tag == InputTag::eps ? "eps" : "a") +
		   ", " + name(m.symbols(), k.symbol) + ")";
}

} // namespace detail

/// All broken invariants of `m`, in transition order. Empty means the machine
/// is a well-formed deterministic unary pda in normal form.
inline std::vector<Violation> validate(const Dpda& m) {
	std::vector<Violation> out;
	const auto n = m.num_states();
	const auto g = m.num_symbols();
	if (n == 0 || m.initial() >= n)
		out.push_back({ViolationKind::undeclared, std::nullopt, "initial state is not declared"});
	if (g == 0 || m.bottom() >= g)
		out.push_back({ViolationKind::undeclared, std::nullopt, "bottom symbol is not declared"});

	std::map<TransitionKey, int> seen;
	for (const auto& t : m.transitions()) {
		TransitionKey key{t.from, t.tag, t.top};
		auto where = detail::describe_key(m, key);
		if (t.from >= n || t.top >= g || t.action.target >= n ||
			(t.action.kind == ActionKind::push && t.action.pushed >= g)) {
			out.push_back({ViolationKind::undeclared, key, "transition " + where + " uses an undeclared identifier"});
			continue;
		}
		if (t.tag == InputTag::a && t.action.kind != ActionKind::read)
			out.push_back({ViolationKind::normal_form, key, "stack operation on input move " + where});
		if (t.action.kind == ActionKind::push && t.action.pushed == m.bottom())
			out.push_back({ViolationKind::bottom_discipline, key, "transition " + where + " pushes the bottom symbol"});
		if (t.action.kind == ActionKind::pop && t.top == m.bottom())
			out.push_back({ViolationKind::bottom_discipline, key, "transition " + where + " pops the bottom symbol"});
		if (++seen[key] > 1)
			out.push_back({ViolationKind::determinism_duplicate, key, "more than one action under " + where});
	}
	for (const auto& [key, count] : seen) {
		if (key.tag == InputTag::eps && seen.contains({key.state, InputTag::a, key.symbol})) {
			TransitionKey loc{key.state, InputTag::a, key.symbol};
			out.push_back({ViolationKind::determinism_eps_and_read, loc,
						   "both eps and input moves under mode " + detail::describe_key(m, key)});
		}
	}
	return out;
}

/// Number of states times number of stack symbols.
inline std::uint64_t size(const Dpda& m) noexcept {
	return static_cast<std::uint64_t>(m.num_states()) * m.num_symbols();
}

// ---------------------------------------------------------------------------
// `@dpda` text format

inline std::string render_dpda(const Dpda& m) {
	std::string out = "@dpda\n";
	out += detail::join(m.states(), "states") + "\n";
	out += detail::join(m.symbols(), "stack") + "\n";
	out += "initial " + m.state_name(m.initial()) + "\n";
	out += "bottom " + m.symbol_name(m.bottom()) + "\n";
	std::vector<std::string> finals;
	for (StateId q = 0; q < m.num_states(); ++q)
		if (m.is_final(q))
			finals.push_back(m.state_name(q));
	out += detail::join(finals, "final") + "\n";
	for (const auto& t : m.transitions()) {
		out += "t " + m.state_name(t.from) + (t.tag == InputTag::eps ? " eps " : " a ") +
			   m.symbol_name(t.top);
		switch (t.action.kind) {
		case ActionKind::read: out += " read " + m.state_name(t.action.target); break;
		case ActionKind::pop: out += " pop " + m.state_name(t.action.target); break;
		case ActionKind::push:
			out += " push " + m.state_name(t.action.target) + " " + m.symbol_name(t.action.pushed);
			break;
		}
		out += '\n';
	}
	return out;
}

inline Dpda parse_dpda(std::string_view text) {
	using detail::token_line;
	auto lines = detail::expect_header(text, "@dpda");

	const token_line* states = nullptr;
	const token_line* stack = nullptr;
	const token_line* initial = nullptr;
	const token_line* bottom = nullptr;
	const token_line* final = nullptr;
	std::vector<const token_line*> trans;
	auto once = [](const token_line*& slot, const token_line& l) {
		if (slot)
			throw parse_error(l.number, "duplicate " + l.tokens[0] + " declaration");
		slot = &l;
	};
	for (const auto& l : lines) {
		const auto& kw = l.tokens[0];
		if (kw == "states") once(states, l);
		else if (kw == "stack") once(stack, l);
		else if (kw == "initial") once(initial, l);
		else if (kw == "bottom") once(bottom, l);
		else if (kw == "final") once(final, l);
		else if (kw == "t") trans.push_back(&l);
		else throw parse_error(l.number, "unknown keyword '" + kw + "'");
	}
	if (!states) throw parse_error(0, "missing states declaration");
	if (!stack) throw parse_error(0, "missing stack declaration");
	if (!initial) throw parse_error(0, "missing initial declaration");
	if (!bottom) throw parse_error(0, "missing bottom declaration");

	DpdaBuilder b;
	std::unordered_map<std::string, StateId> qs;
	std::unordered_map<std::string, SymbolId> zs;
	for (std::size_t i = 1; i < states->tokens.size(); ++i) {
		if (qs.contains(states->tokens[i]))
			throw parse_error(states->number, "duplicate state '" + states->tokens[i] + "'");
		qs.emplace(states->tokens[i], b.add_state(states->tokens[i]));
	}
	for (std::size_t i = 1; i < stack->tokens.size(); ++i) {
		if (zs.contains(stack->tokens[i]))
			throw parse_error(stack->number, "duplicate stack symbol '" + stack->tokens[i] + "'");
		zs.emplace(stack->tokens[i], b.add_symbol(stack->tokens[i]));
	}
	auto state = [&](const std::string& name, std::size_t line) {
		auto it = qs.find(name);
		if (it == qs.end())
			throw parse_error(line, "undeclared state '" + name + "'");
		return it->second;
	};
	auto symbol = [&](const std::string& name, std::size_t line) {
		auto it = zs.find(name);
		if (it == zs.end())
			throw parse_error(line, "undeclared stack symbol '" + name + "'");
		return it->second;
	};
	auto arity = [](const token_line& l, std::size_t n) {
		if (l.tokens.size() != n)
			throw parse_error(l.number, l.tokens[0] + " expects " + std::to_string(n - 1) + " argument(s)");
	};

	arity(*initial, 2);
	b.set_initial(state(initial->tokens[1], initial->number));
	arity(*bottom, 2);
	b.set_bottom(symbol(bottom->tokens[1], bottom->number));
	if (final)
		for (std::size_t i = 1; i < final->tokens.size(); ++i)
			b.set_final(state(final->tokens[i], final->number));

	std::map<TransitionKey, std::size_t> keys;
	for (const auto* l : trans) {
		const auto& tk = l->tokens;
		if (tk.size() < 6)
			throw parse_error(l->number, "malformed transition");
		StateId from = state(tk[1], l->number);
		InputTag tag;
		if (tk[2] == "eps") tag = InputTag::eps;
		else if (tk[2] == "a") tag = InputTag::a;
		else throw parse_error(l->number, "input tag must be 'eps' or 'a', got '" + tk[2] + "'");
		SymbolId top = symbol(tk[3], l->number);
		Action act;
		if (tk[4] == "read") {
			arity(*l, 6);
			act = Action::read(state(tk[5], l->number));
		} else if (tk[4] == "pop" || tk[4] == "push") {
			if (tag != InputTag::eps)
				throw parse_error(l->number, tk[4] + " must be tagged eps");
			if (tk[4] == "pop") {
				arity(*l, 6);
				act = Action::pop(state(tk[5], l->number));
			} else {
				arity(*l, 7);
				act = Action::push(state(tk[5], l->number), symbol(tk[6], l->number));
			}
		} else {
			throw parse_error(l->number, "unknown action '" + tk[4] + "'");
		}
		TransitionKey key{from, tag, top};
		if (auto [it, fresh] = keys.emplace(key, l->number); !fresh)
			throw parse_error(l->number, "duplicate transition key, first declared on line " +
											 std::to_string(it->second));
		b.add({from, tag, top, act});
	}
	return b.build();
}

} // namespace udpda

#endif
