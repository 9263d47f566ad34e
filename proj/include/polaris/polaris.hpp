#pragma once

#include "polaris/billiard.hpp"
#include "polaris/billiard_oracle.hpp"
#include "polaris/cli.hpp"
#include "polaris/constructions.hpp"
#include "polaris/corpus.hpp"
#include "polaris/coxeter.hpp"
#include "polaris/groups.hpp"
#include "polaris/io.hpp"
#include "polaris/lattice.hpp"
#include "polaris/model.hpp"
#include "polaris/polar_data.hpp"
#include "polaris/realize.hpp"
#include "polaris/svg.hpp"
#include "polaris/torus_actions.hpp"
