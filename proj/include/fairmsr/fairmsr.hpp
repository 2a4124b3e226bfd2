#pragma once

#include "fairmsr/instance.hpp"
#include "fairmsr/constraints.hpp"
#include "fairmsr/kcenter.hpp"
#include "fairmsr/profiles.hpp"
#include "fairmsr/flow.hpp"
#include "fairmsr/cover.hpp"
#include "fairmsr/assign.hpp"
#include "fairmsr/search.hpp"
#include "fairmsr/oracle.hpp"
#include "fairmsr/io.hpp"
#include "fairmsr/generate.hpp"
#include "fairmsr/bench.hpp"
