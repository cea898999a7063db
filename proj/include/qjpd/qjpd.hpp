#ifndef QJPD_QJPD_HPP
#define QJPD_QJPD_HPP

#include "qjpd/angular.hpp"
#include "qjpd/comms.hpp"
#include "qjpd/constants.hpp"
#include "qjpd/dynamics.hpp"
#include "qjpd/fit.hpp"
#include "qjpd/integrate.hpp"
#include "qjpd/random.hpp"
#include "qjpd/rates.hpp"
#include "qjpd/species.hpp"
#include "qjpd/spectra.hpp"
#include "qjpd/stark.hpp"

#endif
