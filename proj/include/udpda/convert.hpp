#ifndef UDPDA_CONVERT_HPP
#define UDPDA_CONVERT_HPP

#include <cstdint>
#include <string>

#include "core.hpp"
#include "error.hpp"
#include "sim.hpp"
#include "transform.hpp"
#include "udfa.hpp"

namespace udpda {

/// The minimal unary DFA for L(m).
///
/// The machine is first made immediately accepting, so the acceptance bit of
/// a^k is the finality of the state entered by the k-th read. The bit stream
/// of that machine's run is eventually periodic; its tail and cycle give the
/// DFA directly. The result has at most 2^(n*m) states.
inline UnaryDfa to_dfa(const Dpda& m, Budget b) {
	const Dpda imm = immediate_accept(m, b);
	const RunShape shape = detect_pump(imm, b);

	UnaryDfa d;
	if (shape.pumps() && shape.reads_period > 0) {
		d.preperiod.assign(shape.bits.begin(), shape.bits.begin() + static_cast<std::ptrdiff_t>(shape.reads_pre + 1));
		d.period.assign(shape.bits.begin() + static_cast<std::ptrdiff_t>(shape.reads_pre + 1), shape.bits.end());
	} else {
		d.preperiod = shape.bits;
		d.period = {false};
	}
	d = minimize(std::move(d));

	const std::uint64_t nm = size(m);
	if (nm < 63 && d.states() > (std::uint64_t{1} << nm))
		throw internal_bound_violation("dfa has " + std::to_string(d.states()) +
									   " states, above 2^" + std::to_string(nm));
	return d;
}

/// Default budget: 2^(n*m)+1 steps for the dimensions of `m` itself, capped
/// at 2^24.
inline UnaryDfa to_dfa(const Dpda& m) {
	return to_dfa(m, Budget::for_machine(m));
}

} // namespace udpda

#endif
