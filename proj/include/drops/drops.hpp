// Umbrella header pulling in the whole library.
#pragma once

#include "drops/angles.hpp"
#include "drops/diagnostics.hpp"
#include "drops/fit.hpp"
#include "drops/gates.hpp"
#include "drops/grids.hpp"
#include "drops/io.hpp"
#include "drops/map.hpp"
#include "drops/mesh.hpp"
#include "drops/operators.hpp"
#include "drops/pulses.hpp"
#include "drops/samples.hpp"
#include "drops/tensors.hpp"
#include "drops/tomo.hpp"
