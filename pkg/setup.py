from setuptools import Extension, setup

# The compiled eigensolver kernel is optional: the package falls back to the
# pure-Python twin in numrad._jacobi_py when the extension is unavailable.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("numrad._jacobi_cy", ["src/numrad/_jacobi_cy.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
