import re

from setuptools import setup, find_packages

with open('iquantum/__init__.py', 'rt') as init_file:
    __version__ = re.search(r"^__version__ = '([^']+)'",
                            init_file.read(), re.MULTILINE).group(1)
# Note: iquantum imports sympy and numpy, so the version is read as text
# instead of importing the package.

with open('README.md', 'rt') as readme_file:
    long_description = readme_file.read()

setup(
    name='iquantum',
    version=__version__,
    description='Braid group symmetries, PBW bases and ıHall algebra '
                'cross-checks for quasi-split ıquantum groups',
    long_description=long_description,
    long_description_content_type='text/markdown',
    license='GPLv3',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Framework :: AsyncIO',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    keywords='quantum-groups braid-group hall-algebra computer-algebra',
    packages=find_packages(exclude=['tests']),
    python_requires='>=3.8',
    install_requires=['sympy>=1.9', 'numpy'],
    entry_points={
        'console_scripts': [
            'iquantum=iquantum.console_script:main',
        ],
    },
    extras_require={
        'test': ['pytest'],
        'build-docs': ['sphinx_autodoc_typehints', 'sphinxcontrib-trio',
                       'sphinx_rtd_theme'],
    }
)
