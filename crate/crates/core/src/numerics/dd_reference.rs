const REFERENCE_LN: &[(u64, u64, u64)] = &[
    (1, 0x0000000000000000, 0x0000000000000000),
    (2, 0x3fe62e42fefa39ef, 0x3c7abc9e3b39803f),
    (3, 0x3ff193ea7aad030b, 0xbc9a256f99caabeb),
    (7, 0x3fff2272ae325a57, 0x3c951bda525b3c98),
    (11, 0x40032ee3b77f374c, 0xbca210e8d00cd605),
    (97, 0x40124c8108e54bf8, 0x3c4dee4b05265660),
    (1009, 0x401baab757a0aed2, 0x3cbf3e86bf2c0a18),
    (10007, 0x40226c0d7397fe90, 0x3c7c6ecfc0927321),
    (32059, 0x4024c02bad7ba5f6, 0xbccf97c41c4d3d06),
    (65521, 0x40262e24fe193125, 0xbcb6b5f324bfb9c6),
    (1000003, 0x402ba18afe39c37f, 0x3cc0b42809217971),
    (100000007, 0x40326bb1bce1fae5, 0x3cc87d3856952a1f),
    (1000000007, 0x4034b927f34a104d, 0x3c9ee3e6ff97d098),
    (2305843009213693951, 0x40452417db067f38, 0xbc80c725f1a63879),
    (9007199254740881, 0x40425e4f7b2737f8, 0x3ce712198485ce5a),
];
const REFERENCE_EXP: &[(u64, u64, u64, u64)] = &[
    (0, 1, 0x3ff0000000000000, 0x0000000000000000),
    (1, 1, 0x4005bf0a8b145769, 0x3ca4d57ee2b1013a),
    (1, 3, 0x3ff6546db1ba2d13, 0x3c70a7f6c6f27f6a),
    (69314718, 100000000, 0x3fffffffffb30aad, 0x3c5c6628087c4c69),
    (2, 1, 0x401d8e64b8d4ddae, 0xbca9e62e22efca4c),
    (1723, 100, 0x417cfe38fc686e6e, 0x3db644775a111f8c),
    (196, 10, 0x41b36266d41f3a1e, 0x3e4200eb9cd36d99),
    (5, 7, 0x400057814a4b9367, 0x3ca1c21305b2e453),
];
