#pragma once

#include "bfly/bip_format.hpp"
#include "bfly/canonical.hpp"
#include "bfly/constructor.hpp"
#include "bfly/ensemble.hpp"
#include "bfly/error.hpp"
#include "bfly/explorer.hpp"
#include "bfly/graph.hpp"
#include "bfly/mcmc.hpp"
#include "bfly/swap.hpp"
