#pragma once

#include "algorithms.hpp"
#include "core.hpp"
#include "engine.hpp"
#include "experiment.hpp"
#include "generators.hpp"
#include "instance_io.hpp"
#include "oracle.hpp"
#include "reduction.hpp"
