#pragma once

#include "normlab/certificates.hpp"
#include "normlab/coordinate.hpp"
#include "normlab/errors.hpp"
#include "normlab/json_io.hpp"
#include "normlab/modular.hpp"
#include "normlab/norm.hpp"
#include "normlab/probes.hpp"
#include "normlab/rng.hpp"
#include "normlab/sparse_vector.hpp"
