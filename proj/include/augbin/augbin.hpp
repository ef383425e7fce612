#pragma once

#include "augbin/activation.hpp"
#include "augbin/bench.hpp"
#include "augbin/bitcode.hpp"
#include "augbin/data_io.hpp"
#include "augbin/encoding_layers.hpp"
#include "augbin/equivalence.hpp"
#include "augbin/errors.hpp"
#include "augbin/matrix.hpp"
#include "augbin/network.hpp"
#include "augbin/op_counters.hpp"
#include "augbin/report.hpp"
#include "augbin/splitmix64.hpp"
