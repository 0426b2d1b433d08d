#ifndef UDPDA_DETAIL_LINES_HPP
#define UDPDA_DETAIL_LINES_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "../error.hpp"

namespace udpda::detail {

struct token_line {
	std::size_t number; // 1-based
	std::vector<std::string> tokens;
};

/// Splits text into non-empty lines of whitespace-separated tokens. `#` starts
/// a comment that runs to end of line.
inline std::vector<token_line> tokenize(std::string_view text) {
	std::vector<token_line> out;
	std::size_t number = 0;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		std::size_t end = text.find('\n', pos);
		if (end == std::string_view::npos)
			end = text.size();
		++number;
		std::string_view line = text.substr(pos, end - pos);
		if (auto hash = line.find('#'); hash != std::string_view::npos)
			line = line.substr(0, hash);
		std::istringstream in{std::string(line)};
		token_line tl{number, {}};
		for (std::string tok; in >> tok;)
			tl.tokens.push_back(std::move(tok));
		if (!tl.tokens.empty())
			out.push_back(std::move(tl));
		pos = end + 1;
	}
	return out;
}

/// Checks the first line is exactly `header` and returns the remaining lines.
inline std::vector<token_line> expect_header(std::string_view text, std::string_view header) {
	auto lines = tokenize(text);
	if (lines.empty())
		throw parse_error(0, "empty input, expected " + std::string(header));
	const auto& first = lines.front();
	if (first.tokens.size() != 1 || first.tokens[0] != header)
		throw parse_error(first.number, "expected header " + std::string(header));
	lines.erase(lines.begin());
	return lines;
}

inline bool parse_bit(const std::string& tok, std::size_t line) {
	if (tok == "0")
		return false;
	if (tok == "1")
		return true;
	throw parse_error(line, "expected bit 0 or 1, got '" + tok + "'");
}

/// Returns `base` with `suffix` appended as many times as needed (at least
/// once when `always` is set) so that the result is not in `taken`.
inline std::string fresh_name(const std::unordered_set<std::string>& taken, std::string base,
							  std::string_view suffix, bool always = false) {
	if (always)
		base += suffix;
	while (taken.contains(base))
		base += suffix;
	return base;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view head) {
	std::string out(head);
	for (const auto& p : parts) {
		out += ' ';
		out += p;
	}
	return out;
}

} // namespace udpda::detail

#endif
