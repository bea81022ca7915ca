#pragma once

#include "hcyclic/chain_rotation.hpp"
#include "hcyclic/error.hpp"
#include "hcyclic/graph_structure.hpp"
#include "hcyclic/matrix_core.hpp"
#include "hcyclic/matrix_io.hpp"
#include "hcyclic/perron_frobenius.hpp"
#include "hcyclic/random_instances.hpp"
#include "hcyclic/spectral_decomposition.hpp"
