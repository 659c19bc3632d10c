from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    import numpy as np
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("abcover._ckernels", ["src/abcover/_ckernels.pyx"],
                   include_dirs=[np.get_include()],
                   define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                   optional=True)],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
