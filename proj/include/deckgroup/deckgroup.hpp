#pragma once

#include "bicritical.hpp"
#include "classify.hpp"
#include "deck.hpp"
#include "invariants.hpp"
#include "moebius.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "sampling.hpp"
#include "sphere.hpp"
#include "suite.hpp"
