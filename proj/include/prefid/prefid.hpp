#pragma once

#include "prefid/adversarial.hpp"
#include "prefid/bit_matrix.hpp"
#include "prefid/diameter.hpp"
#include "prefid/error.hpp"
#include "prefid/experiments.hpp"
#include "prefid/extension.hpp"
#include "prefid/gallery.hpp"
#include "prefid/harness.hpp"
#include "prefid/io.hpp"
#include "prefid/lp.hpp"
#include "prefid/metric_index.hpp"
#include "prefid/parametric.hpp"
#include "prefid/preferences.hpp"
#include "prefid/random.hpp"
#include "prefid/rationalize.hpp"
#include "prefid/revealed.hpp"
#include "prefid/spaces.hpp"
#include "prefid/utility.hpp"
