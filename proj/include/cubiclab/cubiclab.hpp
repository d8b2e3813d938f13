#pragma once
#ifndef CUBICLAB_CUBICLAB_HPP
#define CUBICLAB_CUBICLAB_HPP

#include "cubiclab/circle.hpp"
#include "cubiclab/counting.hpp"
#include "cubiclab/covering.hpp"
#include "cubiclab/davenport.hpp"
#include "cubiclab/errors.hpp"
#include "cubiclab/form_io.hpp"
#include "cubiclab/forms.hpp"
#include "cubiclab/matrix.hpp"
#include "cubiclab/minors.hpp"
#include "cubiclab/parallel.hpp"
#include "cubiclab/report_json.hpp"
#include "cubiclab/scalar.hpp"

#endif  // CUBICLAB_CUBICLAB_HPP
