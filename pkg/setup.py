from setuptools import find_packages, setup

setup(
    name="nilsoliton",
    version="0.1",
    packages=find_packages('src', exclude=['tests', 'tests.*']),
    package_dir={'': 'src'},
    package_data={'nilsoliton': ['config/*.yaml']},
    install_requires=[
        'numpy',
        'scipy',
        'pandas',
        'PyYAML',
        'click',
        'cached-property',
    ],
    entry_points={
        'console_scripts': ['nilsoliton = nilsoliton.cli:run'],
    },
)
