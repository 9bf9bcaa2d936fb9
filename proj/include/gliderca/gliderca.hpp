#pragma once

#include "analysis.hpp"
#include "code.hpp"
#include "configuration.hpp"
#include "core.hpp"
#include "glider.hpp"
#include "marker.hpp"
#include "matcher.hpp"
#include "presentation.hpp"
#include "recode.hpp"
#include "sampling.hpp"
#include "sgap.hpp"
#include "syntactic.hpp"
