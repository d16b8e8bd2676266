#pragma once

// Umbrella header.

#include "polydist/adversarial.hpp"
#include "polydist/core.hpp"
#include "polydist/maxmargin.hpp"
#include "polydist/merge.hpp"
#include "polydist/solver.hpp"
