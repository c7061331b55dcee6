#pragma once

#include "etapt/error.hpp"
#include "etapt/fock.hpp"
#include "etapt/linalg.hpp"
#include "etapt/model.hpp"
#include "etapt/symm.hpp"
#include "etapt/verify.hpp"
