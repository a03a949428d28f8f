#pragma once

#include "sgflow/bonds.hpp"
#include "sgflow/circuits.hpp"
#include "sgflow/edge_set.hpp"
#include "sgflow/error.hpp"
#include "sgflow/flow_polynomial.hpp"
#include "sgflow/flows.hpp"
#include "sgflow/group.hpp"
#include "sgflow/polynomial.hpp"
#include "sgflow/signed_graph.hpp"
#include "sgflow/verify.hpp"
