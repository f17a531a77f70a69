int run_demo(bool){return 0;}
