#ifndef QLG_QLG_HPP
#define QLG_QLG_HPP

#include "qlg/core.hpp"
#include "qlg/linalg.hpp"
#include "qlg/polycore.hpp"
#include "qlg/report.hpp"
#include "qlg/frobenius.hpp"
#include "qlg/cardy.hpp"
#include "qlg/landau_ginzburg.hpp"
#include "qlg/moduli.hpp"
#include "qlg/tensor_series.hpp"
#include "qlg/bundle.hpp"
#include "qlg/io.hpp"

#endif  // QLG_QLG_HPP
