"""Build script.

The compiled kernel extension is optional: if Cython (or a C compiler) is
missing the package installs with the pure-Python kernels only.

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "layered_wheels._kernels_cy",
                ["src/layered_wheels/_kernels_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
