#ifndef UDPDA_TESTS_SUPPORT_HPP
#define UDPDA_TESTS_SUPPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "udpda/udpda.hpp"

namespace support {

using namespace udpda;

struct CorpusEntry {
	unsigned n, m;
	std::uint64_t seed;
	Dpda machine;
};

/// The standard corpus: machine i has 1 + i%4 states, 1 + (i/4)%4 symbols and
/// seed i.
inline const std::vector<CorpusEntry>& corpus() {
	static const std::vector<CorpusEntry> all = [] {
		std::vector<CorpusEntry> out;
		for (unsigned i = 0; i < 500; ++i) {
			const unsigned n = 1 + i % 4, m = 1 + (i / 4) % 4;
			out.push_back({n, m, i, gen_random(n, m, i)});
		}
		return out;
	}();
	return all;
}

/// Naive acceptance oracle: runs the machine on unlimited input for `steps`
/// steps and records, per consumed length, whether a final state was seen.
/// Entry k is reliable when the run moved past length k, halted, or (for the
/// last length) looped long enough to have seen its whole cycle.
struct NaiveRun {
	std::vector<bool> bits;
	bool halted = false;
};

inline NaiveRun naive_run(const Dpda& m, std::uint64_t steps) {
	NaiveRun r;
	r.bits.push_back(false);
	StateId q = m.initial();
	std::vector<SymbolId> stack{m.bottom()};
	for (std::uint64_t t = 0;; ++t) {
		if (m.is_final(q))
			r.bits.back() = true;
		if (t == steps)
			return r;
		const Action* eps = m.action(q, InputTag::eps, stack.back());
		const Action* rd = m.action(q, InputTag::a, stack.back());
		const Action* act = eps ? eps : rd;
		if (!act) {
			r.halted = true;
			return r;
		}
		if (!eps)
			r.bits.push_back(false);
		switch (act->kind) {
		case ActionKind::read: break;
		case ActionKind::pop: stack.pop_back(); break;
		case ActionKind::push: stack.push_back(act->pushed); break;
		}
		q = act->target;
	}
}

/// Bits of the naive run, extended with rejections past a halting run.
inline bool naive_accepts(const NaiveRun& r, std::uint64_t k) {
	if (k < r.bits.size())
		return r.bits[k];
	return false;
}

/// Outcome of running the segment from (q, [A]) with unlimited input.
struct SegmentRun {
	std::optional<StateId> exit; ///< state after the stack empties
	std::uint64_t reads = 0;     ///< reads before the stack empties
	bool eps_only = true;        ///< no read happened before stopping
	std::set<StateId> seen;      ///< states visited, including the start
	enum { emptied, halted, starved, cut } end = cut;
};

/// Simulates from (q, [A]) for at most `steps` steps. With `allow_reads`
/// false the run stops ("starved") at the first read demand.
inline SegmentRun run_segment(const Dpda& m, Mode start, bool allow_reads, std::uint64_t steps) {
	SegmentRun r;
	StateId q = start.state;
	std::vector<SymbolId> stack{start.top};
	for (std::uint64_t t = 0; t < steps; ++t) {
		r.seen.insert(q);
		const Action* eps = m.action(q, InputTag::eps, stack.back());
		const Action* rd = m.action(q, InputTag::a, stack.back());
		if (!eps && rd && !allow_reads) {
			r.end = SegmentRun::starved;
			return r;
		}
		const Action* act = eps ? eps : rd;
		if (!act) {
			r.end = SegmentRun::halted;
			return r;
		}
		if (!eps) {
			++r.reads;
			r.eps_only = false;
		}
		q = act->target;
		if (act->kind == ActionKind::pop) {
			stack.pop_back();
			if (stack.empty()) {
				r.exit = q;
				r.end = SegmentRun::emptied;
				return r;
			}
		} else if (act->kind == ActionKind::push) {
			stack.push_back(act->pushed);
		}
	}
	r.seen.insert(q);
	return r;
}

/// The state reached right after the k-th read of the run, for k = 1..count.
inline std::vector<StateId> post_read_states(const Dpda& m, std::size_t count) {
	std::vector<StateId> out;
	Configuration c = Configuration::initial(m);
	for (std::size_t t = 0; out.size() < count && t < 1'000'000; ++t) {
		auto mv = m.move(c.mode());
		if (!mv)
			break;
		detail::apply(mv->second, c);
		if (mv->first == InputTag::a)
			out.push_back(c.state);
	}
	return out;
}

inline std::vector<Mode> all_modes(const Dpda& m) {
	std::vector<Mode> out;
	for (StateId q = 0; q < m.num_states(); ++q)
		for (SymbolId z = 0; z < m.num_symbols(); ++z)
			out.push_back({q, z});
	return out;
}

/// Minimal builder for hand-made machines: states and symbols are created on
/// first mention.
struct Hand {
	DpdaBuilder b;
	std::map<std::string, StateId> q;
	std::map<std::string, SymbolId> z;

	StateId st(const std::string& name) {
		auto it = q.find(name);
		return it != q.end() ? it->second : q[name] = b.add_state(name);
	}
	SymbolId sy(const std::string& name) {
		auto it = z.find(name);
		return it != z.end() ? it->second : z[name] = b.add_symbol(name);
	}
	Hand& read(const std::string& from, InputTag tag, const std::string& top, const std::string& to) {
		const auto q0 = st(from);
		const auto z = sy(top);
		b.read(q0, tag, z, st(to));
		return *this;
	}
	Hand& push(const std::string& from, const std::string& top, const std::string& to, const std::string& sym) {
		const auto q0 = st(from);
		const auto z = sy(top);
		const auto p = st(to);
		b.push(q0, z, p, sy(sym));
		return *this;
	}
	Hand& pop(const std::string& from, const std::string& top, const std::string& to) {
		const auto q0 = st(from);
		const auto z = sy(top);
		b.pop(q0, z, st(to));
		return *this;
	}
	Hand& final(const std::string& name) {
		b.set_final(st(name));
		return *this;
	}
	/// Initial is the first state mentioned, bottom the first symbol.
	Dpda build() {
		b.set_initial(0).set_bottom(0);
		return b.build();
	}
};

} // namespace support

#endif
