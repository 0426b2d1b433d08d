#ifndef UDPDA_ERROR_HPP
#define UDPDA_ERROR_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace udpda {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Malformed `@dpda`, `@udfa` or `@cfg` text. `line()` is 1-based, 0 when the
/// problem is not tied to a line (e.g. a missing declaration).
class parse_error : public error {
public:
	parse_error(std::size_t line, const std::string& what)
		: error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
		  line_(line) {}

	std::size_t line() const noexcept { return line_; }

private:
	std::size_t line_;
};

/// Simulation ran out of steps before any stopping condition triggered.
class budget_exceeded : public error {
public:
	explicit budget_exceeded(std::uint64_t steps)
		: error("step budget of " + std::to_string(steps) + " exhausted"), steps_(steps) {}

	std::uint64_t steps() const noexcept { return steps_; }

private:
	std::uint64_t steps_;
};

/// A pop was attempted with only the bottom symbol on the stack.
class pop_on_bottom : public error {
public:
	pop_on_bottom() : error("pop attempted on the bottom symbol") {}
};

/// history_at was asked for a step the run never reaches.
class run_halted : public error {
public:
	explicit run_halted(std::uint64_t at)
		: error("run halts at step " + std::to_string(at)), at_(at) {}

	std::uint64_t at() const noexcept { return at_; }

private:
	std::uint64_t at_;
};

/// The converted DFA is larger than the 2^(n*m) bound. Always a bug.
class internal_bound_violation : public error {
public:
	using error::error;
};

class undefined_for_mode : public error {
public:
	using error::error;
};

/// The grammar generates no nonempty word.
class empty_language : public error {
public:
	empty_language() : error("grammar generates no nonempty word") {}
};

/// A word-enumeration cell outgrew its cap.
class cap_exceeded : public error {
public:
	cap_exceeded(std::string variable, std::size_t length, std::size_t cap)
		: error("variable " + variable + " derives more than " + std::to_string(cap) +
				" words of length " + std::to_string(length)),
		  variable_(std::move(variable)), length_(length) {}

	const std::string& variable() const noexcept { return variable_; }
	std::size_t length() const noexcept { return length_; }

private:
	std::string variable_;
	std::size_t length_;
};

class missing_finality : public error {
public:
	explicit missing_finality(const std::string& state)
		: error("no finality given for state " + state) {}
};

} // namespace udpda

#endif
