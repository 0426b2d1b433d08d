#ifndef UDPDA_UDFA_HPP
#define UDPDA_UDFA_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "detail/lines.hpp"
#include "error.hpp"

namespace udpda {

/// A unary regular language as an eventually periodic bit sequence: lengths
/// below `preperiod.size()` read the preperiod, later lengths cycle through
/// `period`. Viewed as a DFA this is a tail of p states leading into a cycle
/// of c states.
struct UnaryDfa {
	std::vector<bool> preperiod;
	std::vector<bool> period{false};

	std::size_t states() const noexcept { return preperiod.size() + period.size(); }

	friend bool operator==(const UnaryDfa&, const UnaryDfa&) = default;
};

inline bool udfa_member(const UnaryDfa& d, std::uint64_t k) {
	if (k < d.preperiod.size())
		return d.preperiod[k];
	return d.period[(k - d.preperiod.size()) % d.period.size()];
}

/// The unique smallest representation of the same language.
inline UnaryDfa minimize(UnaryDfa d) {
	if (d.period.empty())
		throw std::invalid_argument("unary dfa with empty period");
	const std::size_t c = d.period.size();
	for (std::size_t p = 1; p <= c; ++p) {
		if (c % p != 0)
			continue;
		bool ok = true;
		for (std::size_t i = p; i < c && ok; ++i)
			ok = d.period[i] == d.period[i % p];
		if (ok) {
			d.period.resize(p);
			break;
		}
	}
	// Fold the tail into the cycle while its last bit agrees with the cycle.
	while (!d.preperiod.empty() && d.preperiod.back() == d.period.back()) {
		d.preperiod.pop_back();
		std::rotate(d.period.rbegin(), d.period.rbegin() + 1, d.period.rend());
	}
	return d;
}

inline bool udfa_equal(const UnaryDfa& x, const UnaryDfa& y) {
	return minimize(x) == minimize(y);
}

// ---------------------------------------------------------------------------
// `@udfa` text format

inline std::string render_udfa(const UnaryDfa& d) {
	std::string out = "@udfa\npreperiod";
	for (bool b : d.preperiod)
		out += b ? " 1" : " 0";
	out += "\nperiod";
	for (bool b : d.period)
		out += b ? " 1" : " 0";
	out += '\n';
	return out;
}

inline UnaryDfa parse_udfa(std::string_view text) {
	auto lines = detail::expect_header(text, "@udfa");
	UnaryDfa d;
	bool have_pre = false, have_per = false;
	for (const auto& l : lines) {
		const auto& kw = l.tokens[0];
		std::vector<bool>* target = nullptr;
		if (kw == "preperiod") {
			if (have_pre)
				throw parse_error(l.number, "duplicate preperiod declaration");
			have_pre = true;
			target = &d.preperiod;
		} else if (kw == "period") {
			if (have_per)
				throw parse_error(l.number, "duplicate period declaration");
			have_per = true;
			target = &d.period;
		} else {
			throw parse_error(l.number, "unknown keyword '" + kw + "'");
		}
		target->clear();
		for (std::size_t i = 1; i < l.tokens.size(); ++i)
			target->push_back(detail::parse_bit(l.tokens[i], l.number));
		if (target == &d.period && d.period.empty())
			throw parse_error(l.number, "period must be nonempty");
	}
	if (!have_per)
		throw parse_error(0, "missing period declaration");
	return d;
}

} // namespace udpda

#endif
