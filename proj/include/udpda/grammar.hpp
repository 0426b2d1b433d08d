#ifndef UDPDA_GRAMMAR_HPP
#define UDPDA_GRAMMAR_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "analysis.hpp"
#include "core.hpp"
#include "detail/lines.hpp"
#include "error.hpp"

namespace udpda {

using VarId = std::uint32_t;

/// A right-hand-side symbol: a variable index or a terminal character.
struct Symbol {
	bool terminal = false;
	VarId var = 0;
	char term = 0;

	static Symbol variable(VarId v) { return {false, v, 0}; }
	static Symbol terminal_of(char c) { return {true, 0, c}; }

	friend bool operator==(const Symbol&, const Symbol&) = default;
	friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct Production {
	VarId lhs = 0;
	std::vector<Symbol> rhs; ///< empty for an epsilon production

	/// For productions that mirror an input read: the name of the state the
	/// read leads to in the source machine. Not part of equality.
	std::optional<std::string> read_target;

	friend bool operator==(const Production& x, const Production& y) {
		return x.lhs == y.lhs && x.rhs == y.rhs;
	}
};

/// A context-free grammar whose productions have at most two symbols on the
/// right.
struct Cfg {
	std::vector<std::string> variables;
	std::string terminals; ///< subset of "a01"
	VarId start = 0;
	std::vector<Production> productions;

	std::optional<VarId> find(std::string_view name) const {
		for (VarId v = 0; v < variables.size(); ++v)
			if (variables[v] == name)
				return v;
		return std::nullopt;
	}

	friend bool operator==(const Cfg&, const Cfg&) = default;
};

namespace detail {

inline std::vector<bool> nullable_set(const Cfg& g) {
	std::vector<bool> nullable(g.variables.size(), false);
	for (bool changed = true; changed;) {
		changed = false;
		for (const auto& p : g.productions) {
			if (nullable[p.lhs])
				continue;
			bool all = std::all_of(p.rhs.begin(), p.rhs.end(),
								   [&](const Symbol& s) { return !s.terminal && nullable[s.var]; });
			if (all)
				changed = nullable[p.lhs] = true;
		}
	}
	return nullable;
}

/// Keeps the variables flagged in `keep` (renumbered in order) and the
/// productions that only mention them. `start` must be kept.
inline Cfg restrict_to(const Cfg& g, const std::vector<bool>& keep) {
	std::vector<VarId> renum(g.variables.size(), 0);
	Cfg out;
	out.terminals = g.terminals;
	for (VarId v = 0; v < g.variables.size(); ++v) {
		if (!keep[v])
			continue;
		renum[v] = static_cast<VarId>(out.variables.size());
		out.variables.push_back(g.variables[v]);
	}
	out.start = renum[g.start];
	for (const auto& p : g.productions) {
		if (!keep[p.lhs])
			continue;
		bool ok = std::all_of(p.rhs.begin(), p.rhs.end(),
							  [&](const Symbol& s) { return s.terminal || keep[s.var]; });
		if (!ok)
			continue;
		Production q = p;
		q.lhs = renum[p.lhs];
		for (auto& s : q.rhs)
			if (!s.terminal)
				s.var = renum[s.var];
		out.productions.push_back(std::move(q));
	}
	return out;
}

inline std::vector<bool> productive_set(const Cfg& g) {
	std::vector<bool> productive(g.variables.size(), false);
	for (bool changed = true; changed;) {
		changed = false;
		for (const auto& p : g.productions) {
			if (productive[p.lhs])
				continue;
			bool all = std::all_of(p.rhs.begin(), p.rhs.end(),
								   [&](const Symbol& s) { return s.terminal || productive[s.var]; });
			if (all)
				changed = productive[p.lhs] = true;
		}
	}
	return productive;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Construction

/// Grammar with variables [qA]_0 and [qA]_1 for every mode. [qA]_0 derives
/// the input consumed by the segment from [qA] (the run from (q, A) until A is
/// popped); [qA]_1 derives the inputs that reach a final state before that
/// segment completes. The start variable is [q0 Z0]_1.
inline Cfg to_grammar(const Dpda& m) {
	const auto exits = exit_table(m);
	const auto g = m.num_symbols();
	Cfg out;
	out.terminals = "a";

	std::unordered_set<std::string> taken;
	out.variables.resize(2 * m.num_modes());
	for (StateId q = 0; q < m.num_states(); ++q)
		for (SymbolId z = 0; z < g; ++z)
			for (int b = 0; b < 2; ++b) {
				auto base = "[" + m.state_name(q) + ":" + m.symbol_name(z) + "]" + std::to_string(b);
				auto name = detail::fresh_name(taken, base, "'");
				taken.insert(name);
				out.variables[2 * (q * g + z) + b] = std::move(name);
			}
	auto var = [g](StateId q, SymbolId z, int b) {
		return Symbol::variable(static_cast<VarId>(2 * (q * g + z) + b));
	};
	out.start = var(m.initial(), m.bottom(), 1).var;

	auto add = [&](Symbol lhs, std::vector<Symbol> rhs, std::optional<std::string> target = std::nullopt) {
		out.productions.push_back({lhs.var, std::move(rhs), std::move(target)});
	};
	for (const auto& t : m.transitions()) {
		const StateId q = t.from;
		const SymbolId a = t.top;
		const StateId p = t.action.target;
		switch (t.action.kind) {
		case ActionKind::push: {
			const SymbolId b = t.action.pushed;
			add(var(q, a, 1), {var(p, b, 1)});
			if (auto exit = exits[{p, b}]) {
				add(var(q, a, 0), {var(p, b, 0), var(*exit, a, 0)});
				add(var(q, a, 1), {var(p, b, 0), var(*exit, a, 1)});
			}
			break;
		}
		case ActionKind::pop: add(var(q, a, 0), {}); break;
		case ActionKind::read:
			for (int bit = 0; bit < 2; ++bit) {
				if (t.tag == InputTag::a)
					add(var(q, a, bit), {Symbol::terminal_of('a'), var(p, a, bit)}, m.state_name(p));
				else
					add(var(q, a, bit), {var(p, a, bit)});
			}
			break;
		}
	}
	for (StateId q = 0; q < m.num_states(); ++q)
		if (m.is_final(q))
			for (SymbolId z = 0; z < g; ++z)
				add(var(q, z, 1), {});
	return out;
}

/// Drops unproductive variables, then variables unreachable from the start.
/// The start variable is always kept.
inline Cfg trim(const Cfg& g) {
	auto keep = detail::productive_set(g);
	keep[g.start] = true;
	Cfg productive = detail::restrict_to(g, keep);
	// Productions of an unproductive start were not removed by restrict_to.
	auto really = detail::productive_set(productive);
	if (!really[productive.start])
		std::erase_if(productive.productions,
					  [&](const Production& p) { return p.lhs == productive.start; });

	std::vector<bool> reach(productive.variables.size(), false);
	std::vector<VarId> work{productive.start};
	reach[productive.start] = true;
	while (!work.empty()) {
		VarId v = work.back();
		work.pop_back();
		for (const auto& p : productive.productions) {
			if (p.lhs != v)
				continue;
			for (const auto& s : p.rhs)
				if (!s.terminal && !reach[s.var]) {
					reach[s.var] = true;
					work.push_back(s.var);
				}
		}
	}
	return detail::restrict_to(productive, reach);
}

/// Chomsky normal form for L(g) minus the empty word: epsilon productions
/// are removed, unit productions are collapsed, and each terminal inside a
/// two-symbol right side is replaced by one fresh variable per terminal.
inline Cfg to_cnf(const Cfg& g) {
	const auto nullable = detail::nullable_set(g);
	const auto n = g.variables.size();

	// Epsilon elimination.
	std::vector<std::vector<std::vector<Symbol>>> bodies(n);
	auto add_body = [&](VarId lhs, std::vector<Symbol> rhs) {
		if (rhs.empty())
			return;
		if (rhs.size() == 1 && !rhs[0].terminal && rhs[0].var == lhs)
			return;
		auto& list = bodies[lhs];
		if (std::find(list.begin(), list.end(), rhs) == list.end())
			list.push_back(std::move(rhs));
	};
	for (const auto& p : g.productions) {
		if (p.rhs.size() > 2)
			throw std::invalid_argument("production with more than two symbols");
		add_body(p.lhs, p.rhs);
		if (p.rhs.size() == 2) {
			if (!p.rhs[0].terminal && nullable[p.rhs[0].var])
				add_body(p.lhs, {p.rhs[1]});
			if (!p.rhs[1].terminal && nullable[p.rhs[1].var])
				add_body(p.lhs, {p.rhs[0]});
		}
	}

	// Unit elimination.
	auto is_unit = [](const std::vector<Symbol>& rhs) { return rhs.size() == 1 && !rhs[0].terminal; };
	Cfg out;
	out.variables = g.variables;
	out.terminals = g.terminals;
	out.start = g.start;
	for (VarId x = 0; x < n; ++x) {
		std::vector<bool> seen(n, false);
		std::vector<VarId> order{x};
		seen[x] = true;
		for (std::size_t i = 0; i < order.size(); ++i)
			for (const auto& rhs : bodies[order[i]])
				if (is_unit(rhs) && !seen[rhs[0].var]) {
					seen[rhs[0].var] = true;
					order.push_back(rhs[0].var);
				}
		std::set<std::vector<Symbol>> emitted;
		for (VarId y : order)
			for (const auto& rhs : bodies[y])
				if (!is_unit(rhs) && emitted.insert(rhs).second)
					out.productions.push_back({x, rhs, std::nullopt});
	}

	// Terminal lifting.
	std::unordered_set<std::string> taken(out.variables.begin(), out.variables.end());
	std::map<char, VarId> lifted;
	for (auto& p : out.productions) {
		if (p.rhs.size() != 2)
			continue;
		for (auto& s : p.rhs) {
			if (!s.terminal)
				continue;
			auto [it, fresh] = lifted.emplace(s.term, 0);
			if (fresh) {
				auto name = detail::fresh_name(taken, std::string("T_") + s.term, "'");
				taken.insert(name);
				it->second = static_cast<VarId>(out.variables.size());
				out.variables.push_back(std::move(name));
			}
			s = Symbol::variable(it->second);
		}
	}
	for (auto [c, v] : lifted)
		out.productions.push_back({v, {Symbol::terminal_of(c)}, std::nullopt});

	out = trim(out);
	bool has_start = std::any_of(out.productions.begin(), out.productions.end(),
								 [&](const Production& p) { return p.lhs == out.start; });
	if (!has_start)
		throw empty_language();
	return out;
}

// ---------------------------------------------------------------------------
// Language oracles

/// bit k = whether a^k is in L(g), for k = 0..max_len.
inline std::vector<bool> unary_lengths(const Cfg& g, std::size_t max_len) {
	for (const auto& p : g.productions)
		for (const auto& s : p.rhs)
			if (s.terminal && s.term != 'a')
				throw std::invalid_argument("unary_lengths needs a grammar over {a}");

	std::vector<bool> bits(max_len + 1, false);
	bits[0] = detail::nullable_set(g)[g.start];
	if (max_len == 0)
		return bits;

	Cfg cnf;
	try {
		cnf = to_cnf(g);
	} catch (const empty_language&) {
		return bits;
	}
	const auto n = cnf.variables.size();
	std::vector<std::vector<bool>> derives(n, std::vector<bool>(max_len + 1, false));
	std::vector<std::vector<std::size_t>> lengths(n);
	for (std::size_t len = 1; len <= max_len; ++len) {
		std::vector<VarId> fresh;
		for (const auto& p : cnf.productions) {
			if (derives[p.lhs][len])
				continue;
			bool hit = false;
			if (p.rhs.size() == 1) {
				hit = len == 1;
			} else {
				const VarId y = p.rhs[0].var, z = p.rhs[1].var;
				for (std::size_t i : lengths[y])
					if (i < len && derives[z][len - i]) {
						hit = true;
						break;
					}
			}
			if (hit) {
				derives[p.lhs][len] = true;
				fresh.push_back(p.lhs);
			}
		}
		for (VarId v : fresh)
			lengths[v].push_back(len);
		bits[len] = derives[cnf.start][len];
	}
	return bits;
}

/// All words of length <= max_len derivable from the start variable, keyed by
/// length. Lengths with no words are omitted.
inline std::map<std::size_t, std::set<std::string>> enumerate_words(const Cfg& g, std::size_t max_len,
																	 std::size_t cap = 8) {
	const auto n = g.variables.size();
	using cell = std::set<std::string>;
	std::vector<std::vector<cell>> words(n, std::vector<cell>(max_len + 1));

	std::vector<std::vector<std::size_t>> occurs(n);
	for (std::size_t i = 0; i < g.productions.size(); ++i)
		for (const auto& s : g.productions[i].rhs)
			if (!s.terminal)
				occurs[s.var].push_back(i);

	for (std::size_t len = 0; len <= max_len; ++len) {
		std::vector<VarId> work;
		auto insert = [&](VarId v, std::string w) {
			auto& c = words[v][len];
			if (c.insert(std::move(w)).second) {
				if (c.size() > cap)
					throw cap_exceeded(g.variables[v], len, cap);
				work.push_back(v);
			}
		};
		auto eval = [&](const Production& p) {
			const auto& rhs = p.rhs;
			if (rhs.empty()) {
				if (len == 0)
					insert(p.lhs, "");
				return;
			}
			if (rhs.size() == 1) {
				if (rhs[0].terminal) {
					if (len == 1)
						insert(p.lhs, std::string(1, rhs[0].term));
				} else {
					const auto& c = words[rhs[0].var][len];
					for (const auto& w : std::vector<std::string>(c.begin(), c.end()))
						insert(p.lhs, w);
				}
				return;
			}
			const Symbol& x = rhs[0];
			const Symbol& y = rhs[1];
			for (std::size_t i = 0; i <= len; ++i) {
				const std::size_t j = len - i;
				std::vector<std::string> left, right;
				if (x.terminal) {
					if (i != 1)
						continue;
					left = {std::string(1, x.term)};
				} else {
					const auto& c = words[x.var][i];
					left.assign(c.begin(), c.end());
				}
				if (left.empty())
					continue;
				if (y.terminal) {
					if (j != 1)
						continue;
					right = {std::string(1, y.term)};
				} else {
					const auto& c = words[y.var][j];
					right.assign(c.begin(), c.end());
				}
				for (const auto& l : left)
					for (const auto& r : right)
						insert(p.lhs, l + r);
			}
		};
		for (const auto& p : g.productions)
			eval(p);
		while (!work.empty()) {
			VarId v = work.back();
			work.pop_back();
			for (std::size_t i : occurs[v])
				eval(g.productions[i]);
		}
	}

	std::map<std::size_t, std::set<std::string>> out;
	for (std::size_t len = 0; len <= max_len; ++len)
		if (!words[g.start][len].empty())
			out.emplace(len, words[g.start][len]);
	return out;
}

// ---------------------------------------------------------------------------
// Relabeling

/// Replaces the letter of every read production [qA]_b -> a [pA]_b by 1 when
/// `finality` marks the read's target state final and by 0 otherwise.
inline Cfg relabel_reads(const Cfg& g, const std::map<std::string, bool>& finality) {
	Cfg out = g;
	bool any = false;
	for (auto& p : out.productions) {
		if (!p.read_target)
			continue;
		auto it = finality.find(*p.read_target);
		if (it == finality.end())
			throw missing_finality(*p.read_target);
		for (auto& s : p.rhs)
			if (s.terminal && s.term == 'a')
				s.term = it->second ? '1' : '0';
		any = true;
	}
	if (any)
		out.terminals = "01";
	return out;
}

/// Maps every terminal to `a`.
inline Cfg project_to_unary(const Cfg& g) {
	Cfg out = g;
	for (auto& p : out.productions)
		for (auto& s : p.rhs)
			if (s.terminal)
				s.term = 'a';
	out.terminals = "a";
	return out;
}

// ---------------------------------------------------------------------------
// `@cfg` text format

inline std::string render_cfg(const Cfg& g) {
	std::string out = "@cfg\nterminals";
	for (char c : g.terminals) {
		out += ' ';
		out += c;
	}
	out += "\nstart " + g.variables.at(g.start) + "\n";
	out += detail::join(g.variables, "v") + "\n";
	for (const auto& p : g.productions) {
		out += "p " + g.variables[p.lhs] + " ->";
		if (p.rhs.empty())
			out += " eps";
		for (const auto& s : p.rhs) {
			out += ' ';
			if (s.terminal)
				out += s.term;
			else
				out += g.variables[s.var];
		}
		out += '\n';
	}
	return out;
}

inline Cfg parse_cfg(std::string_view text) {
	auto lines = detail::expect_header(text, "@cfg");
	auto is_terminal_token = [](const std::string& t) { return t == "a" || t == "0" || t == "1"; };
	auto reserved = [&](const std::string& t) { return is_terminal_token(t) || t == "eps" || t == "->"; };

	Cfg g;
	std::unordered_map<std::string, VarId> index;
	const detail::token_line* start = nullptr;
	bool have_terminals = false;
	std::vector<const detail::token_line*> prods;
	for (const auto& l : lines) {
		const auto& kw = l.tokens[0];
		if (kw == "terminals") {
			if (have_terminals)
				throw parse_error(l.number, "duplicate terminals declaration");
			have_terminals = true;
			for (std::size_t i = 1; i < l.tokens.size(); ++i) {
				if (!is_terminal_token(l.tokens[i]))
					throw parse_error(l.number, "terminal must be a, 0 or 1, got '" + l.tokens[i] + "'");
				if (g.terminals.find(l.tokens[i][0]) != std::string::npos)
					throw parse_error(l.number, "duplicate terminal '" + l.tokens[i] + "'");
				g.terminals += l.tokens[i][0];
			}
		} else if (kw == "start") {
			if (start)
				throw parse_error(l.number, "duplicate start declaration");
			if (l.tokens.size() != 2)
				throw parse_error(l.number, "start expects 1 argument");
			start = &l;
		} else if (kw == "v") {
			for (std::size_t i = 1; i < l.tokens.size(); ++i) {
				const auto& name = l.tokens[i];
				if (reserved(name))
					throw parse_error(l.number, "'" + name + "' cannot name a variable");
				if (!index.emplace(name, static_cast<VarId>(g.variables.size())).second)
					throw parse_error(l.number, "duplicate variable '" + name + "'");
				g.variables.push_back(name);
			}
		} else if (kw == "p") {
			prods.push_back(&l);
		} else {
			throw parse_error(l.number, "unknown keyword '" + kw + "'");
		}
	}
	if (!have_terminals)
		throw parse_error(0, "missing terminals declaration");
	if (!start)
		throw parse_error(0, "missing start declaration");
	auto variable = [&](const std::string& name, std::size_t line) {
		auto it = index.find(name);
		if (it == index.end())
			throw parse_error(line, "undeclared variable '" + name + "'");
		return it->second;
	};
	g.start = variable(start->tokens[1], start->number);

	for (const auto* l : prods) {
		const auto& tk = l->tokens;
		if (tk.size() < 4 || tk[2] != "->")
			throw parse_error(l->number, "expected 'p V -> ...'");
		Production p{variable(tk[1], l->number), {}, std::nullopt};
		if (tk.size() == 4 && tk[3] == "eps") {
			g.productions.push_back(std::move(p));
			continue;
		}
		if (tk.size() > 5)
			throw parse_error(l->number, "right side has more than two symbols");
		for (std::size_t i = 3; i < tk.size(); ++i) {
			if (tk[i] == "eps")
				throw parse_error(l->number, "eps must stand alone");
			if (is_terminal_token(tk[i])) {
				if (g.terminals.find(tk[i][0]) == std::string::npos)
					throw parse_error(l->number, "undeclared terminal '" + tk[i] + "'");
				p.rhs.push_back(Symbol::terminal_of(tk[i][0]));
			} else {
				p.rhs.push_back(Symbol::variable(variable(tk[i], l->number)));
			}
		}
		g.productions.push_back(std::move(p));
	}
	return g;
}

} // namespace udpda

#endif
