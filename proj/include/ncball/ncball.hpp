#pragma once

// Umbrella header: the full ncball library.

#include "ncball/core.hpp"
#include "ncball/freealg.hpp"
#include "ncball/parse.hpp"
#include "ncball/mattuple.hpp"
#include "ncball/opball.hpp"
#include "ncball/realize.hpp"
#include "ncball/ncfunction.hpp"
#include "ncball/ncdiff.hpp"
#include "ncball/probe.hpp"
#include "ncball/varieties.hpp"
#include "ncball/io.hpp"
