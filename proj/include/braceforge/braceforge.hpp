#pragma once

#include "brace.hpp"
#include "cache.hpp"
#include "catalog.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "fpf.hpp"
#include "hom_search.hpp"
#include "io.hpp"
#include "laws.hpp"
#include "modular.hpp"
#include "oracle.hpp"
#include "partitions.hpp"
#include "perm.hpp"
#include "pq_catalog.hpp"
#include "presets.hpp"
#include "subgroup.hpp"
#include "union_find.hpp"
