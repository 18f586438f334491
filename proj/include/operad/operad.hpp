#pragma once

#include "admissibility.hpp"
#include "analysis.hpp"
#include "common_multiple.hpp"
#include "completion.hpp"
#include "element.hpp"
#include "embedding.hpp"
#include "generators.hpp"
#include "linalg.hpp"
#include "order.hpp"
#include "parallel.hpp"
#include "presentation.hpp"
#include "random.hpp"
#include "reduction.hpp"
#include "symmetric.hpp"
#include "tree.hpp"
