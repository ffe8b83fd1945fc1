#pragma once

#include "detstat/common.hpp"
#include "detstat/sieve.hpp"
#include "detstat/matrix.hpp"
#include "detstat/residue_enum.hpp"
#include "detstat/exact_counts.hpp"
#include "detstat/linear_form.hpp"
#include "detstat/expsums.hpp"
#include "detstat/box_counts.hpp"
#include "detstat/euler_products.hpp"
#include "detstat/asymptotics.hpp"
