#ifndef IDEMCERT_IDEMCERT_HPP
#define IDEMCERT_IDEMCERT_HPP

#include <idemcert/ring/poly.hpp>
#include <idemcert/ring/presentation.hpp>
#include <idemcert/ring/certificate.hpp>
#include <idemcert/ring/fact.hpp>
#include <idemcert/ring/search.hpp>
#include <idemcert/ring/comaximal.hpp>
#include <idemcert/matrix/matrix.hpp>
#include <idemcert/matrix/determinant.hpp>
#include <idemcert/matrix/invertible.hpp>
#include <idemcert/matrix/transform.hpp>
#include <idemcert/projector/projector.hpp>
#include <idemcert/projector/analysis.hpp>
#include <idemcert/freeness/freeness.hpp>
#include <idemcert/dynamic/axioms.hpp>
#include <idemcert/dynamic/tree.hpp>
#include <idemcert/dynamic/azumaya.hpp>
#include <idemcert/glue/glue.hpp>
#include <idemcert/io/documents.hpp>
#include <idemcert/cli/commands.hpp>

#endif // IDEMCERT_IDEMCERT_HPP
