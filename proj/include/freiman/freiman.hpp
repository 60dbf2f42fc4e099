#pragma once

#include "freiman/scalar.hpp"
#include "freiman/finite_set.hpp"
#include "freiman/linear_form.hpp"
#include "freiman/form_images.hpp"
#include "freiman/isomorphism.hpp"
#include "freiman/simplex.hpp"
#include "freiman/realization.hpp"
#include "freiman/search.hpp"
#include "freiman/mptq.hpp"
#include "freiman/set_io.hpp"
