namespace frobcat {}
