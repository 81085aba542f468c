#pragma once

// Umbrella header: reconstruction of shellable simplicial spheres from their
// facet-ridge graphs.

#include "dualrec/budget.hpp"
#include "dualrec/complex.hpp"
#include "dualrec/dot.hpp"
#include "dualrec/errors.hpp"
#include "dualrec/frames.hpp"
#include "dualrec/generators.hpp"
#include "dualrec/graph.hpp"
#include "dualrec/json_io.hpp"
#include "dualrec/orientation.hpp"
#include "dualrec/reconstruct.hpp"
#include "dualrec/rng.hpp"
#include "dualrec/shelling.hpp"
#include "dualrec/smallset.hpp"
