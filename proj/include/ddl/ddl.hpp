#ifndef DDL_DDL_HPP
#define DDL_DDL_HPP

#include "ddl/adequacy.hpp"
#include "ddl/dayahead.hpp"
#include "ddl/demand.hpp"
#include "ddl/errors.hpp"
#include "ddl/flow.hpp"
#include "ddl/majorization.hpp"
#include "ddl/market.hpp"
#include "ddl/procurement.hpp"
#include "ddl/rate.hpp"
#include "ddl/types.hpp"
#include "ddl/version.hpp"

#endif // DDL_DDL_HPP
