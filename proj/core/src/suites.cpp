namespace qcert {}
