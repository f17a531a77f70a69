int run_demo(bool);
int main(){return 0;}
