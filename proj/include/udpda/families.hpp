#ifndef UDPDA_FAMILIES_HPP
#define UDPDA_FAMILIES_HPP

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "convert.hpp"
#include "core.hpp"
#include "error.hpp"
#include "grammar.hpp"
#include "transform.hpp"
#include "udfa.hpp"

namespace udpda {

// ---------------------------------------------------------------------------
// Multiples of 2^s

/// A dpda of size 8s+4 for the multiples of 2^s. A procedure that consumes
/// 2^i symbols calls itself twice on i-1; A_i and B_i on the stack mark the
/// first and second call. Symbols are declared Z0, A0..A(s-1), B0..B(s-1).
inline Dpda gen_ls(unsigned s) {
	if (s == 0)
		throw std::invalid_argument("gen_ls needs s >= 1");
	DpdaBuilder b;
	const StateId q0 = b.add_state("q0", true);
	const StateId q1 = b.add_state("q1");
	const StateId q2 = b.add_state("q2");
	const StateId q3 = b.add_state("q3");
	const SymbolId z0 = b.add_symbol("Z0");
	std::vector<SymbolId> as, bs;
	for (unsigned i = 0; i < s; ++i)
		as.push_back(b.add_symbol("A" + std::to_string(i)));
	for (unsigned i = 0; i < s; ++i)
		bs.push_back(b.add_symbol("B" + std::to_string(i)));
	b.set_initial(q0).set_bottom(z0);

	b.push(q0, z0, q1, as[s - 1]);
	b.read(q1, InputTag::a, as[0], q3);
	b.read(q1, InputTag::a, bs[0], q3);
	for (unsigned i = 1; i < s; ++i) {
		b.push(q1, as[i], q1, as[i - 1]);
		b.push(q1, bs[i], q1, as[i - 1]);
	}
	for (unsigned i = 1; i < s; ++i) {
		b.push(q2, as[i], q1, bs[i - 1]);
		b.push(q2, bs[i], q1, bs[i - 1]);
	}
	for (unsigned i = 0; i < s; ++i)
		b.pop(q3, as[i], q2);
	for (unsigned i = 0; i < s; ++i)
		b.pop(q3, bs[i], q3);
	b.push(q2, z0, q1, bs[s - 1]);
	// Back in q0 with only Z0 left; no stack change.
	b.read(q3, InputTag::eps, z0, q0);
	return b.build();
}

// ---------------------------------------------------------------------------
// de Bruijn words and B_m

namespace detail {

// Appends the Lyndon words whose length divides n, in lexicographic order
// (Fredricksen-Kessler-Maiorana).
inline void lyndon_concat(std::size_t t, std::size_t p, std::size_t n, std::vector<char>& a, std::string& out) {
	if (t > n) {
		if (n % p == 0)
			out.append(a.begin() + 1, a.begin() + 1 + static_cast<std::ptrdiff_t>(p));
		return;
	}
	a[t] = a[t - p];
	lyndon_concat(t + 1, p, n, a, out);
	if (a[t - p] == '0') {
		a[t] = '1';
		lyndon_concat(t + 1, t, n, a, out);
	}
}

} // namespace detail

/// The lexicographically least binary word of length 2^m+m-1 containing every
/// length-m word exactly once: the least de Bruijn cycle (the concatenation
/// of the Lyndon words whose length divides m) followed by its first m-1
/// letters.
inline std::string de_bruijn_word(unsigned m) {
	if (m == 0 || m > 24)
		throw std::invalid_argument("de_bruijn_word needs 1 <= m <= 24");
	std::string cycle;
	cycle.reserve(std::size_t{1} << m);
	std::vector<char> a(m + 1, '0');
	detail::lyndon_concat(1, 1, m, a, cycle);
	return cycle + cycle.substr(0, m - 1);
}

/// x mod y mapped into 1..y.
inline std::uint64_t mod_prime(std::uint64_t x, std::uint64_t y) {
	const auto r = x % y;
	return r > 0 ? r : y;
}

/// B_m: a^k is accepted iff letter (k mod' 2^m) of w_m is 1, letters counted
/// from 1.
inline UnaryDfa bm_udfa(unsigned m) {
	const auto w = de_bruijn_word(m);
	const std::uint64_t period = std::uint64_t{1} << m;
	UnaryDfa d;
	d.period.clear();
	for (std::uint64_t k = 0; k < period; ++k)
		d.period.push_back(w[mod_prime(k, period) - 1] == '1');
	return d;
}

/// A stack-free machine for `d`: one state per bit, chained by reads, with the
/// last period state reading back to the start of the period.
inline Dpda dpda_from_udfa(const UnaryDfa& d) {
	DpdaBuilder b;
	const SymbolId z = b.add_symbol("Z");
	b.set_bottom(z);
	const auto p = d.preperiod.size();
	const auto total = d.states();
	for (std::size_t i = 0; i < total; ++i) {
		bool bit = i < p ? d.preperiod[i] : d.period[i - p];
		b.add_state("s" + std::to_string(i), bit);
	}
	for (std::size_t i = 0; i < total; ++i) {
		auto next = i + 1 < total ? i + 1 : p;
		b.read(static_cast<StateId>(i), InputTag::a, z, static_cast<StateId>(next));
	}
	return b.build();
}

// ---------------------------------------------------------------------------
// First-occurrence pattern automaton and the product

/// DFA over {0,1} that enters `accept()` exactly when the first occurrence of
/// the pattern completes. Transitions follow the KMP failure function.
struct PatternDfa {
	std::size_t pattern_length = 0;
	std::vector<std::array<std::size_t, 2>> next; ///< indexed by state, bit

	std::size_t accept() const noexcept { return pattern_length; }
	std::size_t states() const noexcept { return next.size(); }

	/// Whether x ends with the pattern and contains no earlier occurrence.
	bool accepts(std::string_view x) const {
		std::size_t s = 0;
		for (std::size_t i = 0; i < x.size(); ++i) {
			if (s == accept())
				return false;
			s = next[s][x[i] == '1' ? 1 : 0];
		}
		return s == accept();
	}
};

inline PatternDfa suffix_dfa(std::string_view w) {
	if (w.empty())
		throw std::invalid_argument("suffix_dfa needs a nonempty pattern");
	const auto m = w.size();
	std::vector<std::size_t> fail(m + 1, 0);
	for (std::size_t i = 1, k = 0; i < m; ++i) {
		while (k > 0 && w[i] != w[k])
			k = fail[k];
		if (w[i] == w[k])
			++k;
		fail[i + 1] = k;
	}
	PatternDfa a;
	a.pattern_length = m;
	a.next.resize(m + 1);
	for (std::size_t s = 0; s <= m; ++s)
		for (int bit = 0; bit < 2; ++bit) {
			const char c = bit ? '1' : '0';
			if (s < m && w[s] == c)
				a.next[s][bit] = s + 1;
			else
				a.next[s][bit] = s == 0 ? 0 : a.next[fail[s]][bit];
		}
	return a;
}

/// Runs `imm` and `pattern` side by side. Each input read feeds the pattern
/// the bit "the read enters a final state of imm". Once the pattern matches
/// the product stops in a final state. States are named `q@j`.
inline Dpda product_halt(const Dpda& imm, const PatternDfa& pattern) {
	const auto n = imm.num_states();
	const auto k = pattern.states();
	auto id = [k](StateId q, std::size_t j) { return static_cast<StateId>(q * k + j); };

	std::vector<std::string> states;
	std::vector<bool> finals;
	for (StateId q = 0; q < n; ++q)
		for (std::size_t j = 0; j < k; ++j) {
			states.push_back(imm.state_name(q) + "@" + std::to_string(j));
			finals.push_back(j == pattern.accept());
		}
	std::vector<Transition> out;
	for (StateId q = 0; q < n; ++q)
		for (std::size_t j = 0; j < k; ++j) {
			if (j == pattern.accept())
				continue;
			for (const auto& t : imm.transitions()) {
				if (t.from != q)
					continue;
				Transition c = t;
				c.from = id(q, j);
				std::size_t j2 = j;
				if (t.tag == InputTag::a && t.action.kind == ActionKind::read)
					j2 = pattern.next[j][imm.is_final(t.action.target) ? 1 : 0];
				c.action.target = id(t.action.target, j2);
				out.push_back(c);
			}
		}
	return Dpda(std::move(states), imm.symbols(), id(imm.initial(), 0), imm.bottom(),
				std::move(finals), std::move(out));
}

/// Every stage of the B_m word-grammar construction.
struct WordPipeline {
	unsigned order = 0;
	std::string word;         ///< w_m
	UnaryDfa language;        ///< B_m
	Dpda source;              ///< a dpda for B_m
	Dpda immediate;           ///< immediately accepting version of `source`
	PatternDfa pattern;       ///< first occurrence of the length-m suffix of w_m
	Dpda product;             ///< accepts only a^|w_m|
	Cfg grammar;              ///< grammar of `product`
	Cfg relabeled;            ///< generates exactly {w_m}
};

inline constexpr unsigned default_max_word_order = 6;

inline WordPipeline build_word_pipeline(unsigned m, unsigned max_order = default_max_word_order) {
	if (m == 0 || m > max_order)
		throw std::invalid_argument("word pipeline order must be in 1.." + std::to_string(max_order));
	WordPipeline p;
	p.order = m;
	p.word = de_bruijn_word(m);
	p.language = bm_udfa(m);
	p.source = dpda_from_udfa(p.language);
	p.immediate = immediate_accept(p.source);
	p.pattern = suffix_dfa(std::string_view(p.word).substr(p.word.size() - m));
	p.product = product_halt(p.immediate, p.pattern);
	p.grammar = to_grammar(p.product);

	std::map<std::string, bool> finality;
	const auto k = p.pattern.states();
	for (StateId q = 0; q < p.product.num_states(); ++q)
		finality.emplace(p.product.state_name(q), p.immediate.is_final(static_cast<StateId>(q / k)));
	p.relabeled = relabel_reads(p.grammar, finality);
	return p;
}

/// The grammar over {0,1} generating exactly {w_m}. The claim is checked by
/// enumerating every derivable word up to twice the length of w_m.
inline Cfg word_grammar_pipeline(unsigned m, std::size_t cap = 8,
								 unsigned max_order = default_max_word_order) {
	auto p = build_word_pipeline(m, max_order);
	auto words = enumerate_words(p.relabeled, 2 * p.word.size(), cap);
	if (words.size() != 1 || words.begin()->second != std::set<std::string>{p.word})
		throw error("word grammar for order " + std::to_string(m) + " does not generate exactly w_m");
	return p.relabeled;
}

// ---------------------------------------------------------------------------
// Random corpus

/// A pseudo-random valid machine with states q0..q(n-1) and stack symbols
/// Z0 (bottom), A1..A(m-1). The result depends only on (n, m, seed).
inline Dpda gen_random(unsigned n, unsigned m, std::uint64_t seed) {
	if (n == 0 || m == 0)
		throw std::invalid_argument("gen_random needs n, m >= 1");
	std::mt19937_64 rng(seed);
	auto pick = [&rng](std::uint64_t k) { return rng() % k; };

	DpdaBuilder b;
	for (unsigned q = 0; q < n; ++q)
		b.add_state("q" + std::to_string(q));
	b.add_symbol("Z0");
	for (unsigned z = 1; z < m; ++z)
		b.add_symbol("A" + std::to_string(z));
	b.set_initial(0).set_bottom(0);
	for (unsigned q = 0; q < n; ++q)
		b.set_final(q, pick(2) == 1);

	enum { none, read_a, read_eps, push, pop };
	for (StateId q = 0; q < n; ++q)
		for (SymbolId z = 0; z < m; ++z) {
			std::vector<int> options{none, read_a, read_eps};
			if (m > 1)
				options.push_back(push);
			if (z != 0)
				options.push_back(pop);
			const int choice = options[pick(options.size())];
			const auto target = static_cast<StateId>(pick(n));
			switch (choice) {
			case read_a: b.read(q, InputTag::a, z, target); break;
			case read_eps: b.read(q, InputTag::eps, z, target); break;
			case push: b.push(q, z, target, static_cast<SymbolId>(1 + pick(m - 1))); break;
			case pop: b.pop(q, z, target); break;
			default: break;
			}
		}
	return b.build();
}

} // namespace udpda

#endif
