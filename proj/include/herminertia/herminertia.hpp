#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "scalar.hpp"
#include "hermitian_matrix.hpp"
#include "eigen.hpp"
#include "inertia.hpp"
#include "interlace.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "random.hpp"
#include "report_json.hpp"
#include "theorems.hpp"
