#ifndef UDPDA_CLI_HPP
#define UDPDA_CLI_HPP

#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udpda.hpp"

namespace udpda::cli {

namespace detail {

/// Exit statuses.
enum status : int { ok = 0, domain_failure = 1, usage = 2 };

class usage_error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

inline std::string slurp(const std::string& path, std::istream& in) {
	if (path == "-")
		return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
	std::ifstream f(path, std::ios::binary);
	if (!f)
		throw usage_error("cannot open " + path);
	return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline std::string header_of(const std::string& text) {
	auto lines = udpda::detail::tokenize(text);
	if (lines.empty())
		throw parse_error(0, "empty input");
	return lines.front().tokens.front();
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
	if (out_path.empty()) {
		out << text;
		return;
	}
	std::ofstream f(out_path, std::ios::binary);
	if (!f)
		throw usage_error("cannot write " + out_path);
	f << text;
}

/// Parses and validates a machine; violations are reported and turn into a
/// domain failure.
inline Dpda load_valid(const std::string& path, std::istream& in) {
	Dpda m = parse_dpda(slurp(path, in));
	auto violations = validate(m);
	if (!violations.empty()) {
		std::string msg = path + " is not a valid unary dpda:";
		for (const auto& v : violations)
			msg += "\n  " + std::string(to_string(v.kind)) + ": " + v.message;
		throw error(msg);
	}
	return m;
}

/// A language operand of `equiv`: a machine or a DFA.
struct operand {
	std::optional<Dpda> machine;
	std::optional<UnaryDfa> dfa;

	bool member(std::uint64_t k) const { return dfa ? udfa_member(*dfa, k) : accepts(*machine, k); }
};

inline operand load_operand(const std::string& path, std::istream& in) {
	std::string text = slurp(path, in);
	if (header_of(text) == "@udfa")
		return {std::nullopt, parse_udfa(text)};
	Dpda m = parse_dpda(text);
	if (auto v = validate(m); !v.empty())
		throw error(path + " is not a valid unary dpda");
	return {std::move(m), std::nullopt};
}

inline void print_stats(const std::string& text, std::ostream& out) {
	const auto kind = header_of(text);
	if (kind == "@dpda") {
		Dpda m = parse_dpda(text);
		out << "kind dpda\nstates " << m.num_states() << "\nstack " << m.num_symbols()
			<< "\nsize " << size(m) << "\ntransitions " << m.transitions().size() << '\n';
	} else if (kind == "@cfg") {
		Cfg g = parse_cfg(text);
		std::size_t longest = 0;
		for (const auto& p : g.productions)
			longest = std::max(longest, p.rhs.size());
		out << "kind cfg\nvariables " << g.variables.size() << "\nproductions "
			<< g.productions.size() << "\nmax-rhs " << longest << '\n';
	} else if (kind == "@udfa") {
		UnaryDfa d = parse_udfa(text);
		auto min = minimize(d);
		out << "kind udfa\npreperiod " << d.preperiod.size() << "\nperiod " << d.period.size()
			<< "\nstates " << d.states() << "\nminimal-states " << min.states() << '\n';
	} else {
		throw parse_error(1, "unknown header " + kind);
	}
}

/// Sizes along the B_m word-grammar construction.
inline void print_pipeline_stats(unsigned m, std::ostream& out) {
	auto p = build_word_pipeline(m);
	auto row = [&](const char* name, const Dpda& d) {
		out << name << " states " << d.num_states() << " stack " << d.num_symbols() << " size "
			<< size(d) << '\n';
	};
	out << "order " << m << "\nword-length " << p.word.size() << '\n';
	row("source", p.source);
	row("immediate", p.immediate);
	out << "pattern states " << p.pattern.states() << '\n';
	row("product", p.product);
	out << "grammar variables " << p.relabeled.variables.size() << " productions "
		<< p.relabeled.productions.size() << " bound " << 2 * size(p.product) << '\n';
	out << "ratio variables/(size*m) "
		<< static_cast<double>(p.relabeled.variables.size()) / static_cast<double>(size(p.source) * m)
		<< '\n';
}

} // namespace detail

/// Runs one command line (without the program name). Returns the exit status:
/// 0 on success, 1 on domain failures, 2 on usage or parse errors.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
				   std::ostream& err) {
	using namespace detail;
	CLI::App app{"Unary deterministic pushdown automata toolkit", "udpda"};
	app.require_subcommand(1);

	std::string file, file2, out_path;
	std::uint64_t len = 0, max_len = 500, order = 0, n = 0, m = 0, seed = 0;
	std::size_t cap = 8;
	bool cnf = false, do_trim = false, as_udfa = false;
	std::optional<unsigned> pipeline;

	auto* c_validate = app.add_subcommand("validate", "check normal form and determinism");
	c_validate->add_option("FILE", file)->required();

	auto* c_simulate = app.add_subcommand("simulate", "decide membership of a^K");
	c_simulate->add_option("FILE", file)->required();
	c_simulate->add_option("--len", len, "input length K")->required();

	auto* c_dfa = app.add_subcommand("to-dfa", "convert to the minimal unary DFA");
	c_dfa->add_option("FILE", file)->required();
	c_dfa->add_option("--out", out_path);

	auto* c_grammar = app.add_subcommand("to-grammar", "convert to a context-free grammar");
	c_grammar->add_option("FILE", file)->required();
	c_grammar->add_flag("--cnf", cnf, "Chomsky normal form (drops the empty word)");
	c_grammar->add_flag("--trim", do_trim, "remove useless variables");
	c_grammar->add_option("--out", out_path);

	auto* c_imm = app.add_subcommand("immediate", "immediate-acceptance transform");
	c_imm->add_option("FILE", file)->required();
	c_imm->add_option("--out", out_path);

	auto* c_loopfree = app.add_subcommand("loopfree", "remove infinite epsilon loops");
	c_loopfree->add_option("FILE", file)->required();
	c_loopfree->add_option("--out", out_path);

	auto* c_ls = app.add_subcommand("gen-ls", "dpda for the multiples of 2^S");
	c_ls->add_option("S", order)->required()->check(CLI::Range(1, 4096));

	auto* c_bm = app.add_subcommand("gen-bm", "dpda (or DFA) for B_M");
	c_bm->add_option("M", order)->required()->check(CLI::Range(1, 20));
	c_bm->add_flag("--udfa", as_udfa, "print the DFA instead of the machine");

	auto* c_db = app.add_subcommand("gen-debruijn", "de Bruijn word w_M");
	c_db->add_option("M", order)->required()->check(CLI::Range(1, 24));

	auto* c_rand = app.add_subcommand("gen-random", "pseudo-random valid machine");
	c_rand->add_option("N", n)->required()->check(CLI::Range(1, 1000));
	c_rand->add_option("M", m)->required()->check(CLI::Range(1, 1000));
	c_rand->add_option("SEED", seed)->required();

	auto* c_word = app.add_subcommand("word-grammar", "grammar generating exactly w_M");
	c_word->add_option("M", order)->required()->check(CLI::Range(1, static_cast<int>(default_max_word_order)));
	c_word->add_option("--cap", cap, "per-cell word cap for the check");

	auto* c_equiv = app.add_subcommand("equiv", "language equivalence");
	c_equiv->add_option("FILE1", file)->required();
	c_equiv->add_option("FILE2", file2)->required();
	c_equiv->add_option("--max-len", max_len, "pointwise bound when conversion is out of budget");

	auto* c_enum = app.add_subcommand("enum-grammar", "list the words of a grammar");
	c_enum->add_option("FILE", file)->required();
	c_enum->add_option("--max-len", max_len)->required();
	c_enum->add_option("--cap", cap);

	auto* c_stats = app.add_subcommand("stats", "sizes of a machine, grammar or DFA");
	c_stats->add_option("FILE", file);
	c_stats->add_option("--pipeline", pipeline, "sizes along the B_M word-grammar construction")
		->check(CLI::Range(1, static_cast<int>(default_max_word_order)));

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? ok : usage;
	}

	try {
		if (c_validate->parsed()) {
			Dpda mach = parse_dpda(slurp(file, in));
			auto violations = validate(mach);
			for (const auto& v : violations)
				out << to_string(v.kind) << ": " << v.message << '\n';
			if (violations.empty())
				out << "ok\n";
			return violations.empty() ? ok : domain_failure;
		}
		if (c_simulate->parsed()) {
			Dpda mach = load_valid(file, in);
			out << (accepts(mach, len) ? "accept" : "reject") << '\n';
			return ok;
		}
		if (c_dfa->parsed()) {
			emit(render_udfa(to_dfa(load_valid(file, in))), out_path, out);
			return ok;
		}
		if (c_grammar->parsed()) {
			Cfg g = to_grammar(load_valid(file, in));
			if (do_trim)
				g = trim(g);
			if (cnf)
				g = to_cnf(g);
			emit(render_cfg(g), out_path, out);
			return ok;
		}
		if (c_imm->parsed()) {
			emit(render_dpda(immediate_accept(load_valid(file, in))), out_path, out);
			return ok;
		}
		if (c_loopfree->parsed()) {
			emit(render_dpda(make_loop_free(load_valid(file, in))), out_path, out);
			return ok;
		}
		if (c_ls->parsed()) {
			out << render_dpda(gen_ls(static_cast<unsigned>(order)));
			return ok;
		}
		if (c_bm->parsed()) {
			auto d = bm_udfa(static_cast<unsigned>(order));
			out << (as_udfa ? render_udfa(d) : render_dpda(dpda_from_udfa(d)));
			return ok;
		}
		if (c_db->parsed()) {
			out << de_bruijn_word(static_cast<unsigned>(order)) << '\n';
			return ok;
		}
		if (c_rand->parsed()) {
			out << render_dpda(gen_random(static_cast<unsigned>(n), static_cast<unsigned>(m), seed));
			return ok;
		}
		if (c_word->parsed()) {
			out << render_cfg(word_grammar_pipeline(static_cast<unsigned>(order), cap));
			return ok;
		}
		if (c_equiv->parsed()) {
			auto x = load_operand(file, in);
			auto y = load_operand(file2, in);
			std::optional<UnaryDfa> dx, dy;
			try {
				dx = x.dfa ? *x.dfa : to_dfa(*x.machine);
				dy = y.dfa ? *y.dfa : to_dfa(*y.machine);
			} catch (const budget_exceeded&) {
				dx.reset();
			}
			if (dx && dy) {
				if (udfa_equal(*dx, *dy)) {
					out << "equivalent\n";
					return ok;
				}
				const auto bound = dx->preperiod.size() + dy->preperiod.size() +
								   2 * std::lcm(dx->period.size(), dy->period.size());
				for (std::uint64_t k = 0; k <= bound; ++k)
					if (udfa_member(*dx, k) != udfa_member(*dy, k)) {
						out << "not equivalent: differ at length " << k << '\n';
						break;
					}
				return domain_failure;
			}
			for (std::uint64_t k = 0; k <= max_len; ++k)
				if (x.member(k) != y.member(k)) {
					out << "not equivalent: differ at length " << k << '\n';
					return domain_failure;
				}
			out << "equivalent up to length " << max_len << '\n';
			return ok;
		}
		if (c_enum->parsed()) {
			auto words = enumerate_words(parse_cfg(slurp(file, in)), max_len, cap);
			for (const auto& [length, set] : words)
				for (const auto& w : set)
					out << length << ' ' << (w.empty() ? "eps" : w) << '\n';
			return ok;
		}
		if (c_stats->parsed()) {
			if (pipeline) {
				print_pipeline_stats(*pipeline, out);
				return ok;
			}
			if (file.empty())
				throw usage_error("stats needs FILE or --pipeline M");
			print_stats(slurp(file, in), out);
			return ok;
		}
	} catch (const parse_error& e) {
		err << "parse error: " << e.what() << '\n';
		return usage;
	} catch (const usage_error& e) {
		err << "error: " << e.what() << '\n';
		return usage;
	} catch (const std::invalid_argument& e) {
		err << "error: " << e.what() << '\n';
		return usage;
	} catch (const std::exception& e) {
		err << "error: " << e.what() << '\n';
		return domain_failure;
	}
	return usage;
}

} // namespace udpda::cli

#endif
