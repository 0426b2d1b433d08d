#ifndef UDPDA_UDPDA_HPP
#define UDPDA_UDPDA_HPP

#include "analysis.hpp"
#include "convert.hpp"
#include "core.hpp"
#include "error.hpp"
#include "families.hpp"
#include "grammar.hpp"
#include "sim.hpp"
#include "transform.hpp"
#include "udfa.hpp"

#endif
